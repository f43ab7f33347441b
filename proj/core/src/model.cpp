#include "thinfilm/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "thinfilm/error.hpp"

namespace thinfilm {

double ModelParams::theta_upper() const {
  if (n <= 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * (n - 1.0));
}

double ModelParams::default_theta(double n) {
  if (n <= 1.0) return 0.5;
  return 0.5 / (2.0 * (n - 1.0));
}

void ModelParams::validate() const {
  if (!std::isfinite(n) || n < 0.0 || n >= 3.0) {
    throw ConfigError("model: mobility exponent n must lie in [0, 3), got " + std::to_string(n));
  }
  if (fsp_mode && !(n > 1.0 && n < 2.0)) {
    throw ConfigError("model: fsp_mode requires 1 < n < 2 (finite speed of propagation range), got n = " +
                      std::to_string(n));
  }
  if (!std::isfinite(eps) || eps < 0.0) {
    throw ConfigError("model: eps must be finite and >= 0");
  }
  if (n > 1.0 && !(theta_lift > 0.0 && theta_lift < theta_upper())) {
    throw ConfigError("model: theta_lift must lie in (0, 1/(2(n-1))) = (0, " + std::to_string(theta_upper()) +
                      "), got " + std::to_string(theta_lift));
  }
  if (n <= 1.0 && !(theta_lift > 0.0) ) {
    throw ConfigError("model: theta_lift must be positive");
  }
}

double mobility(double u_val, const ModelParams& params) {
  return std::pow(std::abs(u_val), params.n) + params.eps;
}

double entropy_g0(double z, double n) {
  if (!(z >= 0.0)) throw ConfigError("entropy_g0: negative argument");
  if (n > 1.0 && n < 2.0) {
    return std::pow(z, 2.0 - n) / ((n - 1.0) * (n - 2.0));
  }
  if (n == 1.0) {
    return (z > 0.0 ? z * std::log(z) : 0.0) - z + 1.0;
  }
  if (n == 2.0) {
    return -std::log(z) + z - 1.0;
  }
  return (std::pow(z, 2.0 - n) - 1.0) / ((n - 1.0) * (n - 2.0)) - (z - 1.0) / (1.0 - n);
}

double entropy_g0_prime(double z, double n) {
  if (n == 1.0) return std::log(z);
  return std::pow(z, 1.0 - n) / (1.0 - n);
}

std::vector<double> lift_initial_data(std::span<const double> u0, const ModelParams& params) {
  params.validate();
  const double lift = params.eps > 0.0 ? std::pow(params.eps, params.theta_lift) : 0.0;
  std::vector<double> out(u0.begin(), u0.end());
  for (double& v : out) {
    if (v < 0.0) throw ConfigError("lift_initial_data: initial data must be nonnegative");
    v += lift;
  }
  return out;
}

namespace {

void check_size(const Grid& grid, std::span<const double> u, const char* who) {
  if (u.size() != grid.n_cells()) {
    throw ConfigError(std::string(who) + ": state has " + std::to_string(u.size()) + " entries, grid has " +
                      std::to_string(grid.n_cells()) + " cells");
  }
}

}  // namespace

std::vector<double> weighted_gradient(const Grid& grid, std::span<const double> u) {
  check_size(grid, u, "weighted_gradient");
  const std::size_t nc = grid.n_cells();
  const auto& wf = grid.w_faces();
  const double inv_dx = 1.0 / grid.dx();
  std::vector<double> v(nc + 1, 0.0);
  for (std::size_t f = 1; f < nc; ++f) {
    v[f] = wf[f] * (u[f] - u[f - 1]) * inv_dx;
  }
  return v;
}

FaceMobility face_mobility(double left, double right, const ModelParams& params) {
  const double n = params.n;
  const double al = std::abs(left);
  const double ar = std::abs(right);
  const double pl = std::pow(al, n);
  const double pr = std::pow(ar, n);
  // d|u|^n/du; zero at u = 0 for n > 1, treated as zero otherwise as well.
  const auto dpow = [n](double u, double au) {
    if (au == 0.0 || n == 0.0) return 0.0;
    return n * std::pow(au, n - 1.0) * (u < 0.0 ? -1.0 : 1.0);
  };
  if (params.face_mean == FaceMean::harmonic) {
    const double ml = pl + params.eps;
    const double mr = pr + params.eps;
    const double sum = ml + mr;
    if (sum == 0.0) return {0.0, 0.0, 0.0};
    const double m = 2.0 * ml * mr / sum;
    return {m, 2.0 * mr * mr / (sum * sum) * dpow(left, al), 2.0 * ml * ml / (sum * sum) * dpow(right, ar)};
  }
  const bool entropic = params.face_mean == FaceMean::entropic && n > 0.0 && left > 0.0 && right > 0.0 &&
                        std::abs(right - left) > 1e-6 * std::max(left, right);
  if (!entropic) {
    return {0.5 * (pl + pr) + params.eps, 0.5 * dpow(left, al), 0.5 * dpow(right, ar)};
  }
  // m = (b - a) / (g(b) - g(a)) with g' = z^{-n}.
  const double a = left;
  const double b = right;
  const double dg = entropy_g0_prime(b, n) - entropy_g0_prime(a, n);
  const double m0 = (b - a) / dg;
  const double dm_da = (-dg + (b - a) * std::pow(a, -n)) / (dg * dg);
  const double dm_db = (dg - (b - a) * std::pow(b, -n)) / (dg * dg);
  return {m0 + params.eps, dm_da, dm_db};
}

std::vector<double> flux(const Grid& grid, const ModelParams& params, std::span<const double> u) {
  check_size(grid, u, "flux");
  const std::size_t nc = grid.n_cells();
  const double inv_dx = 1.0 / grid.dx();
  const auto v = weighted_gradient(grid, u);
  std::vector<double> q(nc);
  for (std::size_t i = 0; i < nc; ++i) q[i] = (v[i + 1] - v[i]) * inv_dx;
  std::vector<double> j(nc + 1, 0.0);
  const auto& wf = grid.w_faces();
  for (std::size_t f = 1; f < nc; ++f) {
    const double m = face_mobility(u[f - 1], u[f], params).m;
    j[f] = wf[f] * m * (q[f] - q[f - 1]) * inv_dx;
    if (!std::isfinite(j[f])) {
      throw NumericalAbort("flux: non-finite value at face " + std::to_string(f));
    }
  }
  return j;
}

std::vector<double> rhs(const Grid& grid, const ModelParams& params, std::span<const double> u) {
  const auto j = flux(grid, params, u);
  const std::size_t nc = grid.n_cells();
  const double inv_dx = 1.0 / grid.dx();
  std::vector<double> out(nc);
  for (std::size_t i = 0; i < nc; ++i) out[i] = -(j[i + 1] - j[i]) * inv_dx;
  return out;
}

void ScenarioSpec::validate() const {
  if (!(r0 > 0.0 && r0 < 1.0)) throw ConfigError("scenario: r0 must lie in (0, 1)");
  if (!(margin >= 0.05)) throw ConfigError("scenario: margin must be at least 0.05");
  if (!(bump_width > 0.0)) throw ConfigError("scenario: bump_width must be positive");
  if (!(amplitude >= 0.0)) throw ConfigError("scenario: amplitude must be nonnegative");
  if (bump_power < 1 || bump_power > 8) throw ConfigError("scenario: bump_power must lie in 1..8");
  if (bump_center - bump_width < r0 - 1e-12) {
    throw ConfigError("scenario: bump reaches into the dead core (center - width < r0)");
  }
  if (bump_center + bump_width > 1.0 - margin + 1e-12) {
    throw ConfigError("scenario: bump reaches within margin of the pole");
  }
  if (!(t_end > 0.0)) throw ConfigError("scenario: t_end must be positive");
  if (!(stop_halfwidth >= 0.0 && stop_halfwidth < r0)) {
    throw ConfigError("scenario: stop_halfwidth must lie in [0, r0)");
  }
  if (output_cadence < 1) throw ConfigError("scenario: output_cadence must be at least 1");
  if (geometric_output && !(output_decades > 0.0)) {
    throw ConfigError("scenario: output_decades must be positive");
  }
}

namespace {

// Antiderivative of (1 - s^2)^k = sum_j C(k, j) (-1)^j s^{2j}, clamped to |s| <= 1.
double bump_primitive(double s, int k) {
  s = std::clamp(s, -1.0, 1.0);
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    acc += ((j % 2 == 0) ? binom : -binom) * std::pow(s, 2 * j + 1) / (2 * j + 1);
    binom = binom * (k - j) / (j + 1);
  }
  return acc;
}

}  // namespace

std::vector<double> ScenarioSpec::initial_profile(const Grid& grid) const {
  const auto& xf = grid.x_faces();
  std::vector<double> u(grid.n_cells(), 0.0);
  for (std::size_t i = 0; i < grid.n_cells(); ++i) {
    double acc = 0.0;
    for (double c : {bump_center, -bump_center}) {
      const double sa = (xf[i] - c) / bump_width;
      const double sb = (xf[i + 1] - c) / bump_width;
      acc += bump_primitive(sb, bump_power) - bump_primitive(sa, bump_power);
    }
    u[i] = amplitude * bump_width * acc / grid.dx();
  }
  return u;
}

double ScenarioSpec::exact_mass() const {
  // int_{-1}^{1} (1 - s^2)^k ds = 2 (2k)!! / (2k + 1)!!
  double unit = 2.0;
  for (int j = 1; j <= bump_power; ++j) unit *= (2.0 * j) / (2.0 * j + 1.0);
  return 2.0 * amplitude * bump_width * unit;
}

std::vector<double> ScenarioSpec::output_times() const {
  std::vector<double> times(static_cast<std::size_t>(output_cadence));
  for (int j = 1; j <= output_cadence; ++j) {
    const double frac = static_cast<double>(j) / output_cadence;
    times[j - 1] = geometric_output ? t_end * std::pow(10.0, -output_decades * (1.0 - frac)) : t_end * frac;
  }
  times.back() = t_end;
  return times;
}

}  // namespace thinfilm
