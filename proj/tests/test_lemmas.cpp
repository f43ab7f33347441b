#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "thinfilm/error.hpp"
#include "thinfilm/lemmas.hpp"
#include "thinfilm_cli/lemma_suites.hpp"

using namespace thinfilm;

namespace {

GNParams gn(double b, int k) {
  GNParams p;
  p.a = 2.0;
  p.b = b;
  p.d = 2.0;
  p.j = 2;
  p.k = k;
  return p;
}

}  // namespace

TEST_SUITE("lemmas") {

TEST_CASE("interpolation exponents") {
  CHECK(std::abs(gn_theta(gn(0.5, 0)) - 3.0 / 7.0) <= 1e-15);
  CHECK(std::abs(gn_theta(gn(0.5, 1)) - 5.0 / 7.0) <= 1e-15);
  CHECK(std::abs(gn_theta(gn(1.0, 0)) - 1.0 / 5.0) <= 1e-15);
  CHECK(std::abs(gn_theta(gn(1.0, 1)) - 3.0 / 5.0) <= 1e-15);
}

TEST_CASE("interpolation exponent range and preconditions") {
  for (double b : {0.1, 0.5, 1.0, 1.9})
    for (int k : {0, 1}) {
      const double th = gn_theta(gn(b, k));
      CHECK(th >= k / 2.0);
      CHECK(th < 1.0);
    }
  GNParams p = gn(1.0, 0);
  p.a = 1.0;
  CHECK_THROWS_AS(gn_theta(p), ConfigError);
  p = gn(2.5, 0);
  CHECK_THROWS_AS(gn_theta(p), ConfigError);
  p = gn(1.0, 2);
  CHECK_THROWS_AS(gn_theta(p), ConfigError);
  p = gn(1.0, 0);
  p.d = 1.0;
  CHECK_THROWS_AS(gn_theta(p), ConfigError);
}

TEST_CASE("rate constants at n = 3/2") {
  const auto rc = rate_constants(1.5);
  CHECK(rc.kappa1 == doctest::Approx(12.0 / 7.0).epsilon(1e-15));
  CHECK(rc.kappa2 == doctest::Approx(6.0 / 7.0).epsilon(1e-15));
  CHECK(rc.kappa3 == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(rc.alpha1 == doctest::Approx(44.0 / 7.0).epsilon(1e-15));
  CHECK(rc.alpha2 == doctest::Approx(36.0 / 7.0).epsilon(1e-15));
  CHECK(rc.beta1 == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
  CHECK(rc.beta2 == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
  CHECK(rc.kappa == doctest::Approx((1 + 12.0 / 7.0) * (1 + 6.0 / 7.0)).epsilon(1e-15));
  const double g = std::max(std::pow(2.0, -rc.kappa1 / (4 * rc.kappa)), std::pow(2.0, -rc.kappa2 / (2 * rc.kappa)));
  CHECK(rc.gamma == doctest::Approx(g).epsilon(1e-15));
  CHECK(rc.gamma < 1.0);
  CHECK_THROWS_AS(rate_constants(1.0), ConfigError);
  CHECK_THROWS_AS(rate_constants(2.0), ConfigError);
}

TEST_CASE("rate constants stay positive and gamma below one") {
  for (int i = 0; i < 50; ++i) {
    const double n = 1.01 + 0.98 * i / 49.0;
    const auto rc = rate_constants(n);
    for (double v : {rc.alpha1, rc.alpha2, rc.beta1, rc.beta2, rc.kappa1, rc.kappa2, rc.kappa3, rc.kappa}) CHECK(v > 0.0);
    CHECK(rc.gamma > 0.0);
    CHECK(rc.gamma < 1.0);
  }
}

TEST_CASE("kappa1 over theta1 is four") {
  for (int i = 1; i < 20; ++i) {
    const double n = 1.0 + i / 20.0;
    const double theta1 = gn_theta(gn(2.0 - n, 0));
    CHECK(theta1 == doctest::Approx(n / (8.0 - 3.0 * n)).epsilon(1e-14));
    CHECK(rate_constants(n).kappa1 / theta1 == doctest::Approx(4.0).epsilon(1e-14));
  }
}

TEST_CASE("power sum minimum") {
  const auto unit = minimize_power_sum(1.0, 1.0);
  CHECK(unit.x_min == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(unit.f_min == doctest::Approx(2.0).epsilon(1e-15));
  const auto m = minimize_power_sum(8.0, 1.0);
  CHECK(m.x_min == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(m.f_min == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-15));
  // Dense sampling oracle over [x_min/10, 10 x_min].
  for (const auto& [a, b] : {std::pair{8.0, 1.0}, std::pair{0.02, 0.3}, std::pair{5.0, 3.7}}) {
    const auto r = minimize_power_sum(a, b);
    double best = std::numeric_limits<double>::infinity();
    double xbest = 0.0;
    for (int i = 0; i <= 100000; ++i) {
      const double x = r.x_min * std::pow(10.0, -1.0 + 2.0 * i / 100000.0);
      const double f = power_sum(x, a, b);
      CHECK(r.f_min <= f + 1e-12);
      if (f < best) {
        best = f;
        xbest = x;
      }
    }
    CHECK(xbest == doctest::Approx(r.x_min).epsilon(1e-3));
    CHECK(r.f_min == doctest::Approx(power_sum(r.x_min, a, b)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(minimize_power_sum(0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(minimize_power_sum(1.0, -1.0), ConfigError);
}

TEST_CASE("optimal penetration scales as T^{1/(n+4)}") {
  // Gamma + T^{2/(n+8)} Gamma^{-n/(n+8)}: the minimizer's T-exponent.
  for (double n : {1.2, 1.5, 1.8}) {
    const double b = n / (n + 8.0);
    const double t1 = 1e-4;
    const double t2 = 1e-1;
    const double x1 = minimize_power_sum(std::pow(t1, 2.0 / (n + 8.0)), b).x_min;
    const double x2 = minimize_power_sum(std::pow(t2, 2.0 / (n + 8.0)), b).x_min;
    CHECK(std::log(x2 / x1) / std::log(t2 / t1) == doctest::Approx(1.0 / (n + 4.0)).epsilon(1e-12));
  }
}

TEST_CASE("stampacchia threshold formula") {
  const std::vector<double> s = {0.0, 0.9, 1.0};
  const auto r = stampacchia_threshold(s, std::vector<double>{0.0, 0.0, 0.1}, 0.5, 1.0);
  CHECK(r.s_star == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(r.verified);
  const auto z = stampacchia_threshold(s, std::vector<double>{0.0, 0.0, 0.0}, 0.3, 1.0);
  CHECK(z.s_star == 1.0);
  CHECK(z.verified);
}

TEST_CASE("stampacchia input checks") {
  const std::vector<double> s = {0.0, 0.5, 1.0};
  CHECK_THROWS_AS(stampacchia_threshold(s, std::vector<double>{0.0, 0.2, 0.1}, 0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(stampacchia_threshold(s, std::vector<double>{-0.1, 0.0, 0.1}, 0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(stampacchia_threshold(s, std::vector<double>{0.0, 0.0, 0.1}, 1.0, 1.0), ConfigError);
  // Slope 1/2 < 1 - eps violates f(s - f(s)) <= eps f(s): the message names s.
  std::vector<double> ss, ff;
  for (int i = 0; i <= 100; ++i) {
    ss.push_back(-1.0 + 0.02 * i);
    ff.push_back(0.5 * std::max(0.0, ss.back() + 0.5));
  }
  try {
    stampacchia_threshold(ss, ff, 0.1, 1.0);
    FAIL("expected a hypothesis violation");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("s = ") != std::string::npos);
  }
}

TEST_CASE("stampacchia families against the direct recursion") {
  const auto fams = cli::stampacchia_families();
  CHECK(fams.size() == 36);
  for (const auto& fam : fams) {
    CAPTURE(fam.name);
    const auto res = stampacchia_threshold(fam.s, fam.f, fam.eps, 1.0);
    CHECK(res.verified);
    // s_{k+1} = s_k - f(s_k) from s0 = 1.
    double sk = 1.0;
    for (int k = 0; k < 10000; ++k) {
      const double fk = interpolate_samples(fam.s, fam.f, sk);
      if (fk == 0.0) break;
      sk -= fk;
    }
    CHECK(sk >= res.s_star - 1e-12);
    CHECK(interpolate_samples(fam.s, fam.f, sk) <= 1e-12);
    for (std::size_t i = 0; i < fam.s.size() && fam.s[i] <= sk; ++i) CHECK(fam.f[i] <= 1e-12);
  }
}

TEST_CASE("interpolation of samples") {
  const std::vector<double> s = {0.0, 1.0, 3.0};
  const std::vector<double> f = {1.0, 3.0, 4.0};
  CHECK(interpolate_samples(s, f, -1.0) == 1.0);
  CHECK(interpolate_samples(s, f, 0.5) == 2.0);
  CHECK(interpolate_samples(s, f, 2.0) == 3.5);
  CHECK(interpolate_samples(s, f, 9.0) == 4.0);
}

TEST_CASE("interpolation check on constants and zero") {
  const std::vector<GNProfile> cat = {
      {"zero", [](double, int) { return 0.0; }},
      {"three", [](double, int m) { return m == 0 ? 3.0 : 0.0; }},
  };
  const auto rep = gn_empirical_check(cat, gn(1.0, 0), 0.2, 0.9);
  CHECK(std::isnan(rep.ratios[0]));
  CHECK_FALSE(rep.notes.empty());
  // ||c||_a / ((R-r)^{-(a-b)/(ab)} ||c||_b) = L^{1/a - 1/b + (a-b)/(ab)} = 1.
  CHECK(rep.ratios[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rep.evaluated == 1);
  CHECK_THROWS_AS(gn_empirical_check(cat, gn(1.0, 0), 0.9, 0.9), ConfigError);
  CHECK_THROWS_AS(gn_empirical_check(std::vector<GNProfile>{}, gn(1.0, 0), 0.2, 0.9), ConfigError);
}

TEST_CASE("interpolation check over the catalog") {
  const auto cat = default_gn_catalog();
  CHECK(cat.size() == 50);
  for (int k : {0, 1}) {
    const auto coarse = gn_empirical_check(cat, gn(1.0, k), 0.25, 1.0, 128);
    const auto fine = gn_empirical_check(cat, gn(1.0, k), 0.25, 1.0, 512);
    CHECK(std::isfinite(fine.max_ratio));
    CHECK(std::abs(fine.max_ratio - coarse.max_ratio) <= 0.05 * fine.max_ratio);
  }
}

TEST_CASE("lemma suite report") {
  for (const auto& c : cli::run_lemma_suites()) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }
}

}
