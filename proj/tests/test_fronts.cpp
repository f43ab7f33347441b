#include <cmath>
#include <vector>

#include "doctest.h"
#include "thinfilm/error.hpp"
#include "thinfilm/fronts.hpp"
#include "thinfilm/model.hpp"

using namespace thinfilm;

namespace {

FrontTrace synthetic(double c, double p, int count, double r0 = 1.0) {
  FrontTrace t;
  t.r0 = r0;
  t.times.push_back(0.0);
  t.gamma.push_back(0.0);
  for (int k = 0; k < count; ++k) {
    const double time = 1e-6 * std::pow(10.0, 4.0 * k / (count - 1));
    t.times.push_back(time);
    t.gamma.push_back(c * std::pow(time, p));
  }
  return t;
}

}  // namespace

TEST_SUITE("fronts") {

TEST_CASE("dead core half-width") {
  const Grid g(64, 1e-6);
  CHECK(dead_core_halfwidth(g, std::vector<double>(64, 0.0), 1e-3) == 1.0);
  CHECK(dead_core_halfwidth(g, std::vector<double>(64, 1.0), 1e-3) == 0.0);
  CHECK_THROWS_AS(dead_core_halfwidth(g, std::vector<double>(64, 0.0), 0.0), ConfigError);

  // Fresh lifted data at the default threshold, as a run sees it.
  ScenarioSpec s;
  const Grid fine(512, 1e-6);
  ModelParams p;
  p.n = 1.5;
  p.eps = 1e-8;
  const auto u = lift_initial_data(s.initial_profile(fine), p);
  const double th = 10.0 * std::pow(p.eps, p.theta_lift);
  CHECK(std::abs(dead_core_halfwidth(fine, u, th) - s.r0) <= fine.dx());
  // Far below the lift the straddling edge cell's small average drags the
  // interpolated crossing inward, still within one and a half cells.
  const auto bare = s.initial_profile(fine);
  CHECK(std::abs(dead_core_halfwidth(fine, bare, 1e-6) - s.r0) <= 1.5 * fine.dx());
  // A larger threshold can only widen the dry region.
  double prev = 0.0;
  for (double th : {1e-8, 1e-6, 1e-4, 1e-2, 0.1, 0.5}) {
    const double rho = dead_core_halfwidth(fine, u, th);
    CHECK(rho >= prev);
    prev = rho;
  }
}

TEST_CASE("half-width takes the nearer side") {
  const Grid g(64, 1e-6);
  std::vector<double> u(64, 0.0);
  u[50] = 1.0;
  u[20] = 1.0;
  const std::vector<double> r(u.rbegin(), u.rend());
  CHECK(dead_core_halfwidth(g, u, 0.5) == doctest::Approx(dead_core_halfwidth(g, r, 0.5)));
  // Crossing between cells 43 and 44, interpolated at half height.
  std::vector<double> one(64, 0.0);
  one[44] = 1.0;
  one[19] = 1.0;
  CHECK(dead_core_halfwidth(g, one, 0.5) == doctest::Approx(g.x_centers()[43] + 0.5 * g.dx()));
}

TEST_CASE("penetration series is monotone and starts at zero") {
  const std::vector<double> t = {0.0, 1.0, 2.0, 3.0, 4.0};
  const std::vector<double> rho = {0.29, 0.28, 0.285, 0.2, 0.35};
  const auto tr = penetration_series(t, rho, 0.3, 1e-3);
  const std::vector<double> expect_gamma = {0.0, 0.3 - 0.28, 0.3 - 0.28, 0.3 - 0.2, 0.3 - 0.2};
  REQUIRE(tr.gamma.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(tr.gamma[k] == doctest::Approx(expect_gamma[k]));
  CHECK_THROWS_AS(penetration_series(std::vector<double>{}, std::vector<double>{}, 0.3, 1e-3), ConfigError);
}

TEST_CASE("power law fit recovers synthetic data") {
  const auto tr = synthetic(2.0, 0.2, 40, 10.0);
  FitWindow w;
  w.t_lo = 0.0;
  w.t_hi = 1.0;
  const auto fit = fit_power_law(tr, w);
  CHECK(fit.exponent == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(fit.prefactor == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.samples == 40);
}

TEST_CASE("fit round trip for several exponents") {
  for (double p : {0.1, 1.0 / 7.0, 2.0 / 11.0, 0.35}) {
    const auto tr = synthetic(0.7, p, 25, 10.0);
    const auto fit = fit_power_law(tr, FitWindow{0.0, 1.0, 0.0});
    CHECK(fit.exponent == doctest::Approx(p).epsilon(1e-10));
    CHECK(fit.prefactor == doctest::Approx(0.7).epsilon(1e-9));
  }
}

TEST_CASE("constant series fits exponent zero") {
  auto tr = synthetic(0.05, 0.0, 20, 10.0);
  const auto fit = fit_power_law(tr, FitWindow{0.0, 1.0, 0.0});
  CHECK(fit.exponent == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("default window") {
  const auto tr = synthetic(2.0, 0.2, 40, 0.5);
  const auto w = default_window(tr, 1e-3);
  CHECK(w.gamma_floor == doctest::Approx(2e-3));
  CHECK(w.gamma_ceiling == doctest::Approx(0.45));
  CHECK(w.t_hi == doctest::Approx(0.9 * tr.times.back()));
  const auto fit = fit_power_law(tr, w);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    // Every sample used must respect the ceiling.
    if (tr.times[k] >= fit.window.first && tr.times[k] <= fit.window.second) CHECK(tr.gamma[k] < 0.45);
  }
  CHECK(fit.exponent == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("too few samples") {
  const auto tr = synthetic(1.0, 0.2, 7, 10.0);
  CHECK_THROWS_AS(fit_power_law(tr, FitWindow{0.0, 1.0, 0.0}), ConfigError);
}

TEST_CASE("predicted exponents") {
  CHECK(predicted_exponent(1.5, ExponentKind::optimal) == doctest::Approx(2.0 / 11.0).epsilon(1e-15));
  CHECK(predicted_exponent(1.5, ExponentKind::coarse) == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  CHECK(predicted_exponent(1.2, ExponentKind::optimal) == doctest::Approx(0.1923076923).epsilon(1e-9));
  CHECK(predicted_exponent(1.8, ExponentKind::optimal) == doctest::Approx(0.1724137931).epsilon(1e-9));
  for (int i = 1; i < 20; ++i) {
    const double n = 1.0 + i / 20.0;
    CHECK(predicted_exponent(n, ExponentKind::coarse) < predicted_exponent(n, ExponentKind::optimal));
  }
  CHECK(predicted_exponent(2.0 - 1e-12, ExponentKind::optimal) == doctest::Approx(1.0 / 6.0));
  CHECK_THROWS_AS(predicted_exponent(2.0, ExponentKind::optimal), ConfigError);
  CHECK_THROWS_AS(predicted_exponent(0.5, ExponentKind::coarse), ConfigError);
}

}
