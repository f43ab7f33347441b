#pragma once

#include <string>
#include <vector>

namespace thinfilm::cli {

struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Gagliardo-Nirenberg exponents, rate constants, Stampacchia families,
/// power-sum minimization and the empirical interpolation guard.
std::vector<SuiteCheck> run_lemma_suites();

/// Sampled nondecreasing f on a uniform grid over [-1, 1].
struct StampacchiaFamily {
  std::string name;
  double eps;
  std::vector<double> s;
  std::vector<double> f;
};

/// Piecewise-linear families, zero below a start point and with every slope
/// at least 1 - eps afterwards, so f(s - f(s)) <= eps f(s) holds for s <= 1.
std::vector<StampacchiaFamily> stampacchia_families();

}  // namespace thinfilm::cli
