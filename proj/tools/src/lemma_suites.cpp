#include "thinfilm_cli/lemma_suites.hpp"

#include <cmath>
#include <cstdio>
#include <exception>

#include "thinfilm/lemmas.hpp"

namespace thinfilm::cli {

namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

}  // namespace

std::vector<StampacchiaFamily> stampacchia_families() {
  constexpr int kSamples = 4001;  // spacing 5e-4 on [-1, 1]
  std::vector<double> grid(kSamples);
  for (int i = 0; i < kSamples; ++i) grid[i] = -1.0 + 2.0 * i / (kSamples - 1);

  struct Shape {
    double start;
    double piece;
    std::vector<double> slopes;  // in units of (1 - eps), each >= 1
  };
  const std::vector<Shape> shapes = {
      {0.2, 1.0, {1.0}},        {0.5, 1.0, {1.0}},   {0.8, 1.0, {1.0}},        {0.2, 1.0, {3.0}},
      {0.5, 0.1, {1.0, 4.0}},   {0.3, 0.2, {5.0, 1.0}}, {0.0, 0.25, {1.0, 2.0, 1.5, 8.0}},
      {0.6, 0.05, {1.2, 1.0, 6.0}},
  };
  std::vector<StampacchiaFamily> out;
  for (double eps : {0.1, 0.25, 0.5, 0.9}) {
    out.push_back({fmt("zero eps=%.2f", eps), eps, grid, std::vector<double>(kSamples, 0.0)});
    for (std::size_t k = 0; k < shapes.size(); ++k) {
      const auto& sh = shapes[k];
      StampacchiaFamily fam;
      fam.name = fmt("shape %.0f eps=%.2f", static_cast<double>(k), eps);
      fam.eps = eps;
      fam.s = grid;
      fam.f.resize(kSamples);
      for (int i = 0; i < kSamples; ++i) {
        const double x = grid[i];
        double val = 0.0;
        double left = sh.start;
        for (std::size_t p = 0; p < sh.slopes.size() && x > left; ++p) {
          const bool last = p + 1 == sh.slopes.size();
          const double right = last ? INFINITY : left + sh.piece;
          val += sh.slopes[p] * (1.0 - eps) * (std::min(x, right) - left);
          left = right;
        }
        fam.f[i] = val;
      }
      out.push_back(std::move(fam));
    }
  }
  return out;
}

std::vector<SuiteCheck> run_lemma_suites() {
  std::vector<SuiteCheck> out;
  const auto add = [&](std::string name, bool pass, std::string detail) {
    out.push_back({std::move(name), pass, std::move(detail)});
  };
  const auto guard = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, false, e.what());
    }
  };

  struct ThetaCase {
    double b;
    int k;
    double expect;
    const char* label;
  };
  for (const ThetaCase& c : {ThetaCase{0.5, 0, 3.0 / 7.0, "3/7"}, ThetaCase{0.5, 1, 5.0 / 7.0, "5/7"},
                             ThetaCase{1.0, 0, 1.0 / 5.0, "1/5"}, ThetaCase{1.0, 1, 3.0 / 5.0, "3/5"}}) {
    const std::string name = std::string("gn_theta b=") + fmt("%g", c.b) + " k=" + std::to_string(c.k);
    guard(name, [&] {
      GNParams p;
      p.a = 2.0;
      p.b = c.b;
      p.d = 2.0;
      p.j = 2;
      p.k = c.k;
      const double th = gn_theta(p);
      add(name, std::abs(th - c.expect) <= 1e-15, fmt("theta = %.17g", th) + " (expected " + c.label + ")");
    });
  }

  guard("rate_constants n=1.5", [&] {
    const auto rc = rate_constants(1.5);
    const bool ok = std::abs(rc.kappa1 - 12.0 / 7.0) < 1e-14 && std::abs(rc.kappa2 - 6.0 / 7.0) < 1e-14 &&
                    std::abs(rc.kappa3 - 3.0) < 1e-14 && std::abs(rc.alpha1 - 44.0 / 7.0) < 1e-14 &&
                    std::abs(rc.beta1 - 4.0 / 7.0) < 1e-14 && rc.gamma > 0.0 && rc.gamma < 1.0;
    add("rate_constants n=1.5", ok,
        fmt("kappa3 = %.17g, gamma = %.17g", rc.kappa3, rc.gamma));
  });
  guard("rate_constants gamma sweep", [&] {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double n = 1.01 + 0.98 * i / 49.0;
      const double g = rate_constants(n).gamma;
      ok = ok && g > 0.0 && g < 1.0;
      worst = std::max(worst, g);
    }
    add("rate_constants gamma sweep", ok, fmt("max gamma over 50 n in [1.01, 1.99] = %.6f", worst));
  });

  guard("stampacchia families", [&] {
    int passed = 0;
    int total = 0;
    std::string first_fail;
    for (const auto& fam : stampacchia_families()) {
      ++total;
      const auto res = stampacchia_threshold(fam.s, fam.f, fam.eps, 1.0);
      if (res.verified) {
        ++passed;
      } else if (first_fail.empty()) {
        first_fail = fam.name;
      }
    }
    add("stampacchia families", passed == total,
        std::to_string(passed) + "/" + std::to_string(total) + " verified" +
            (first_fail.empty() ? "" : ", first failure: " + first_fail));
  });
  guard("stampacchia formula", [&] {
    // f = (s - 0.9)_+ satisfies the hypothesis for eps = 1/2 and has f(1) = 0.1.
    const std::vector<double> s = {0.0, 0.9, 1.0};
    const std::vector<double> f = {0.0, 0.0, 0.1};
    const auto r = stampacchia_threshold(s, f, 0.5, 1.0);
    add("stampacchia formula", std::abs(r.s_star - 0.8) < 1e-15 && r.verified, fmt("s* = %.17g", r.s_star));
  });

  guard("minimize_power_sum", [&] {
    bool ok = true;
    std::string detail;
    for (const auto& [a, b] : {std::pair{1.0, 1.0}, std::pair{8.0, 1.0}, std::pair{0.3, 2.5}}) {
      const auto m = minimize_power_sum(a, b);
      for (int i = 0; i <= 1000; ++i) {
        const double x = m.x_min * std::pow(10.0, -1.0 + 2.0 * i / 1000.0);
        ok = ok && m.f_min <= power_sum(x, a, b) + 1e-12;
      }
      detail += fmt("(%g, %g) -> ", a, b) + fmt("(%.6g, %.6g) ", m.x_min, m.f_min);
    }
    const auto unit = minimize_power_sum(1.0, 1.0);
    ok = ok && std::abs(unit.x_min - 1.0) < 1e-15 && std::abs(unit.f_min - 2.0) < 1e-15;
    add("minimize_power_sum", ok, detail);
  });

  guard("gn empirical guard", [&] {
    GNParams p;
    p.a = 2.0;
    p.b = 1.0;
    p.d = 2.0;
    p.j = 2;
    p.k = 1;
    const auto catalog = default_gn_catalog();
    const auto coarse = gn_empirical_check(catalog, p, 0.25, 1.0, 128);
    const auto fine = gn_empirical_check(catalog, p, 0.25, 1.0, 256);
    const double rel = std::abs(fine.max_ratio - coarse.max_ratio) / fine.max_ratio;
    add("gn empirical guard", std::isfinite(fine.max_ratio) && rel <= 0.05,
        fmt("max ratio %.6g, refinement change %.2e", fine.max_ratio, rel));
  });
  return out;
}

}  // namespace thinfilm::cli
