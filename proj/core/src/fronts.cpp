#include "thinfilm/fronts.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thinfilm/error.hpp"

namespace thinfilm {

double dead_core_halfwidth(const Grid& grid, std::span<const double> u, double threshold) {
  if (!(threshold > 0.0)) throw ConfigError("dead_core_halfwidth: threshold must be positive");
  if (u.size() != grid.n_cells()) throw ConfigError("dead_core_halfwidth: size mismatch");
  const auto& xc = grid.x_centers();
  const std::size_t half = grid.n_cells() / 2;

  // Right side: cells half, half+1, ...; left side: half-1, half-2, ...
  const auto side = [&](bool right) {
    for (std::size_t k = 0; k < half; ++k) {
      const std::size_t i = right ? half + k : half - 1 - k;
      if (u[i] < threshold) continue;
      if (k == 0) return 0.0;
      const std::size_t p = right ? i - 1 : i + 1;
      const double frac = (threshold - u[p]) / (u[i] - u[p]);
      return std::abs(xc[p]) + frac * grid.dx();
    }
    return 1.0;
  };
  return std::min(side(true), side(false));
}

FrontTrace penetration_series(std::span<const double> times, std::span<const double> halfwidths, double r0,
                              double threshold) {
  if (times.empty()) throw ConfigError("penetration_series: empty trajectory");
  if (times.size() != halfwidths.size()) throw ConfigError("penetration_series: size mismatch");
  FrontTrace trace;
  trace.r0 = r0;
  trace.threshold = threshold;
  trace.times.assign(times.begin(), times.end());
  trace.gamma.resize(times.size());
  double running = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double g = k == 0 ? 0.0 : std::clamp(r0 - halfwidths[k], 0.0, r0);
    running = std::max(running, g);
    trace.gamma[k] = running;
  }
  return trace;
}

FrontTrace penetration_series(const Grid& grid, const Trajectory& trajectory, double r0, double threshold) {
  std::vector<double> times, rho;
  times.reserve(trajectory.frames.size());
  rho.reserve(trajectory.frames.size());
  for (const State& s : trajectory.frames) {
    times.push_back(s.t);
    rho.push_back(dead_core_halfwidth(grid, s.u, threshold));
  }
  return penetration_series(times, rho, r0, threshold);
}

FitWindow default_window(const FrontTrace& trace, double dx) {
  FitWindow w;
  w.t_lo = 0.0;
  w.t_hi = trace.times.empty() ? 0.0 : 0.9 * trace.times.back();
  w.gamma_floor = 2.0 * dx;
  if (trace.r0 > 0.0) w.gamma_ceiling = 0.9 * trace.r0;
  return w;
}

RateFit fit_power_law(const FrontTrace& trace, const FitWindow& window) {
  std::vector<double> lx, ly;
  double t_min = INFINITY, t_max = -INFINITY;
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    const double t = trace.times[k];
    const double g = trace.gamma[k];
    if (!(t > 0.0) || t < window.t_lo || t > window.t_hi || !(g > window.gamma_floor) || !(g < window.gamma_ceiling) || !(g > 0.0)) continue;
    lx.push_back(std::log(t));
    ly.push_back(std::log(g));
    t_min = std::min(t_min, t);
    t_max = std::max(t_max, t);
  }
  if (lx.size() < 8) {
    throw ConfigError("fit_power_law: only " + std::to_string(lx.size()) +
                      " resolved samples in window (need at least 8)");
  }
  const double m = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    const double dxk = lx[k] - mx;
    const double dyk = ly[k] - my;
    sxx += dxk * dxk;
    sxy += dxk * dyk;
    syy += dyk * dyk;
  }
  if (sxx == 0.0) throw ConfigError("fit_power_law: all samples share one time");
  RateFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  double ss_res = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    const double r = ly[k] - (my + fit.exponent * (lx[k] - mx));
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.window = {t_min, t_max};
  fit.samples = lx.size();
  return fit;
}

double predicted_exponent(double n, ExponentKind kind) {
  if (!(n > 1.0 && n < 2.0)) {
    throw ConfigError("predicted_exponent: requires 1 < n < 2, got " + std::to_string(n));
  }
  return kind == ExponentKind::optimal ? 1.0 / (n + 4.0) : (2.0 - n) / (8.0 - 3.0 * n);
}

}  // namespace thinfilm
