#include <cmath>
#include <vector>

#include "doctest.h"
#include "thinfilm/error.hpp"
#include "thinfilm/geometry.hpp"

using namespace thinfilm;

TEST_SUITE("geometry") {

TEST_CASE("tiny grid centers and spacing") {
  const auto g = Grid::unchecked_for_tests(4, 0.0);
  CHECK(g.dx() == 0.5);
  const std::vector<double> expect = {-0.75, -0.25, 0.25, 0.75};
  CHECK(g.x_centers() == expect);
  CHECK(g.x_faces().size() == 5);
  CHECK(g.w_faces().front() == 0.0);
  CHECK(g.w_faces().back() == 0.0);
}

TEST_CASE("faces hit the endpoints and are evenly spaced") {
  const Grid g(1000, 1e-4);
  CHECK(g.dx() == doctest::Approx(0.002).epsilon(1e-15));
  CHECK(g.x_faces().size() == 1001);
  CHECK(g.x_faces().front() == -1.0);
  CHECK(g.x_faces().back() == 1.0);
  for (std::size_t i = 0; i + 1 < g.x_faces().size(); ++i)
    CHECK(std::abs(g.x_faces()[i + 1] - g.x_faces()[i] - g.dx()) <= 4e-16);
  // With a power-of-two count dx is a dyadic rational and spacing is exact.
  const Grid p(512, 0.0);
  for (std::size_t i = 0; i + 1 < p.x_faces().size(); ++i) REQUIRE(p.x_faces()[i + 1] - p.x_faces()[i] == p.dx());
}

TEST_CASE("centers are symmetric about the origin") {
  const Grid g(256, 1e-6);
  const auto& xc = g.x_centers();
  for (std::size_t i = 0; i < xc.size(); ++i) CHECK(xc[i] == -xc[xc.size() - 1 - i]);
}

TEST_CASE("grid preconditions") {
  CHECK_THROWS_AS(Grid(15, 0.0), ConfigError);
  CHECK_THROWS_AS(Grid(14, 0.0), ConfigError);
  CHECK_THROWS_AS(Grid(33, 0.0), ConfigError);
  CHECK_THROWS_AS(Grid(64, -1e-9), ConfigError);
  CHECK_NOTHROW(Grid(16, 0.0));
}

TEST_CASE("pole weight") {
  const Grid g(64, 1e-3);
  CHECK(g.weight_at(1.0) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(g.weight_at(-1.0) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(g.weight_at(0.0) == doctest::Approx(1.001));
  CHECK_THROWS_AS(g.weight_at(1.0000001), ConfigError);
  for (std::size_t i = 0; i < g.n_cells(); ++i) {
    CHECK(g.w_centers()[i] >= g.delta());
    CHECK(g.w_centers()[i] == doctest::Approx(g.weight_at(g.x_centers()[i])));
  }
}

TEST_CASE("smoothstep values") {
  CHECK(cutoff_eta(0.0) == 1.0);
  CHECK(cutoff_eta(1.0) == 0.0);
  CHECK(cutoff_eta(-3.0) == 1.0);
  CHECK(cutoff_eta(5.0) == 0.0);
  CHECK(cutoff_eta(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cutoff_eta_prime(0.0) == 0.0);
  CHECK(cutoff_eta_prime(1.0) == 0.0);
  CHECK(cutoff_eta_second(0.0) == 0.0);
  CHECK(cutoff_eta_second(1.0) == 0.0);
  CHECK(cutoff_eta_prime(0.5) == doctest::Approx(-15.0 / 8.0));
}

TEST_CASE("smoothstep symmetry, monotonicity, derivative consistency") {
  double prev = 1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    const double e = cutoff_eta(t);
    CHECK(e <= prev + 1e-15);
    prev = e;
    CHECK(e + cutoff_eta(1.0 - t) == doctest::Approx(1.0).epsilon(1e-14));
  }
  const double h = 1e-5;
  for (double t : {0.1, 0.3, 0.6, 0.85}) {
    const double d1 = (cutoff_eta(t + h) - cutoff_eta(t - h)) / (2 * h);
    const double d2 = (cutoff_eta_prime(t + h) - cutoff_eta_prime(t - h)) / (2 * h);
    CHECK(cutoff_eta_prime(t) == doctest::Approx(d1).epsilon(1e-8));
    CHECK(cutoff_eta_second(t) == doctest::Approx(d2).epsilon(1e-8));
  }
}

TEST_CASE("smoothstep derivative peaks by sampling") {
  double p1 = 0.0;
  double p2 = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double t = i / 10000.0;
    p1 = std::max(p1, std::abs(cutoff_eta_prime(t)));
    p2 = std::max(p2, std::abs(cutoff_eta_second(t)));
  }
  CHECK(p1 == doctest::Approx(15.0 / 8.0).epsilon(1e-12));
  // |eta''| = 60 |t (1-t) (1-2t)| peaks at t = 1/2 +- 1/(2 sqrt 3) with
  // value 10/sqrt(3), above the 5 (sqrt 3 - 1) figure sometimes quoted.
  CHECK(p2 == doctest::Approx(10.0 / std::sqrt(3.0)).epsilon(1e-6));
  CHECK(p2 > 5.0 * (std::sqrt(3.0) - 1.0));
}

TEST_CASE("shell cutoff") {
  const CutoffSpec c{0.5, 0.25, 2.0};
  CHECK(cutoff_eta_sd(0.0, c) == 1.0);
  CHECK(cutoff_eta_sd(0.25, c) == 1.0);
  CHECK(cutoff_eta_sd(0.375, c) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cutoff_eta_sd(-0.375, c) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cutoff_eta_sd(0.5, c) == 0.0);
  CHECK(cutoff_eta_sd(0.9, c) == 0.0);
  // Difference quotients scale like 1/delta_c and 1/delta_c^2.
  const double h = 1e-5;
  double d1 = 0.0;
  double d2 = 0.0;
  for (int i = 1; i < 4000; ++i) {
    const double x = i / 4000.0;
    d1 = std::max(d1, std::abs(cutoff_eta_sd(x + h, c) - cutoff_eta_sd(x - h, c)) / (2 * h));
    d2 = std::max(d2, std::abs(cutoff_eta_sd(x + h, c) - 2 * cutoff_eta_sd(x, c) + cutoff_eta_sd(x - h, c)) / (h * h));
  }
  CHECK(d1 <= 15.0 / 8.0 / 0.25 * (1 + 1e-6));
  CHECK(d2 <= 10.0 / std::sqrt(3.0) / (0.25 * 0.25) * (1 + 1e-3));
}

TEST_CASE("cutoff parameter validation") {
  CHECK_THROWS_AS((CutoffSpec{0.5, 0.6, 2.0}.validate()), ConfigError);
  CHECK_THROWS_AS((CutoffSpec{1.5, 0.2, 2.0}.validate()), ConfigError);
  CHECK_THROWS_AS((CutoffSpec{0.5, 0.0, 2.0}.validate()), ConfigError);
  CHECK_THROWS_AS((CutoffSpec{0.5, 0.2, 1.0}.validate()), ConfigError);
  CHECK_NOTHROW((CutoffSpec{1.0, 1.0, 1.5}.validate()));
}

}
