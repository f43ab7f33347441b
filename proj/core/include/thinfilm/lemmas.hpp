#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace thinfilm {

/// Exponents of a Gagliardo-Nirenberg interpolation inequality
///   ||D^k v||_a <= d1 ||D^j v||_d^theta ||v||_b^(1-theta) + d2 ||v||_b.
struct GNParams {
  double a = 2.0;
  double b = 1.0;
  double d = 2.0;
  int j = 2;
  int k = 0;
  int dim = 1;

  void validate() const;
};

/// theta = (1/b + k/N - 1/a) / (1/b + j/N - 1/d). Throws ConfigError on
/// invalid parameters or when theta falls outside [k/j, 1).
double gn_theta(const GNParams& p);

/// A smooth test profile; deriv(x, m) returns the m-th derivative.
struct GNProfile {
  std::string name;
  std::function<double(double, int)> deriv;
};

/// 50 polynomial and trigonometric profiles with closed-form derivatives.
std::vector<GNProfile> default_gn_catalog();

struct GNCheckReport {
  double max_ratio = 0.0;
  std::string argmax;
  std::vector<double> ratios;  ///< NaN for skipped profiles
  std::vector<std::string> notes;
  std::size_t evaluated = 0;
};

/// Evaluates ||D^k v||_a / (||D^j v||_d^theta ||v||_b^(1-theta)
/// + (R-r)^(-(a-b)N/(ab) - k) ||v||_b) on the shell (r, R) with composite
/// Gauss-Legendre quadrature on `panels` panels. Only N = 1 is supported.
GNCheckReport gn_empirical_check(std::span<const GNProfile> catalog, const GNParams& p, double r, double R,
                                 int panels = 256);

struct StampacchiaResult {
  double s_star = 0.0;
  bool verified = false;
  /// Largest sampled f at or below s_star.
  double max_f_below = 0.0;
  double tolerance = 0.0;
};

/// Given samples of a nonnegative nondecreasing f on ascending s, checks
/// f(s - f(s)) <= eps f(s) at every sample s <= s0 (linear interpolation,
/// f extended by its first sample to the left), then returns
/// s* = s0 - f(s0)/(1 - eps) and whether f vanishes on samples s <= s*.
/// Throws ConfigError on non-monotone input or a hypothesis violation.
StampacchiaResult stampacchia_threshold(std::span<const double> s, std::span<const double> f, double eps, double s0);

/// Piecewise-linear interpolation of samples, constant extension outside.
double interpolate_samples(std::span<const double> s, std::span<const double> f, double x);

struct RateConstants {
  double alpha1, alpha2, beta1, beta2;
  double kappa1, kappa2, kappa3, kappa;
  double gamma;
};

/// Requires 1 < n < 2.
RateConstants rate_constants(double n);

struct PowerSumMin {
  double x_min;
  double f_min;
};

/// Minimizer of x + a x^(-b) on x > 0.
PowerSumMin minimize_power_sum(double a, double b);

inline double power_sum(double x, double a, double b) { return x + a * std::pow(x, -b); }

}  // namespace thinfilm
