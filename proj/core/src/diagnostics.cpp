#include "thinfilm/diagnostics.hpp"

#include <cmath>

#include "thinfilm/error.hpp"
#include "thinfilm/model.hpp"

namespace thinfilm {

double mass(const Grid& grid, std::span<const double> u) {
  double acc = 0.0;
  for (double v : u) acc += v;
  return acc * grid.dx();
}

double energy(const Grid& grid, std::span<const double> u) {
  const auto& wf = grid.w_faces();
  const double dx = grid.dx();
  double acc = 0.0;
  for (std::size_t f = 1; f < u.size(); ++f) {
    const double g = (u[f] - u[f - 1]) / dx;
    acc += wf[f] * g * g;
  }
  return 0.5 * acc * dx;
}

double entropy_total(const Grid& grid, std::span<const double> u, double n, double tol_neg) {
  double acc = 0.0;
  for (double v : u) {
    if (v < 0.0) {
      if (v < -tol_neg) throw ConfigError("entropy_total: negative film thickness beyond tolerance");
      v = 0.0;
    }
    acc += entropy_g0(v, n);
  }
  return acc * grid.dx();
}

double LocalizedEntropyReport::ratio() const {
  const double lhs = lhs_entropy_T + lhs_time_weight + dissipation;
  const double rhs = rhs_initial + rhs_gradient + rhs_zeroth;
  if (rhs == 0.0) return lhs == 0.0 ? 0.0 : INFINITY;
  return lhs / rhs;
}

namespace {

// Spatial combinations of zeta = (eta E)^{1/4} at one point, already
// divided by the time factor E = exp(-t/T) (every term is linear in E).
struct CutoffTerms {
  double z4 = 0.0;         // zeta^4
  double gradient = 0.0;   // zeta^4 + zeta^2 zeta_x^2 + zeta^3 |zeta_xx|
  double zeroth = 0.0;     // zeta^4 + zeta_x^4 + zeta^2 zeta_xx^2
};

CutoffTerms cutoff_terms(double x, const CutoffSpec& spec) {
  const double tau = (std::abs(x) - (spec.s - spec.delta_c)) / spec.delta_c;
  CutoffTerms t;
  const double eta = cutoff_eta(tau);
  if (eta <= 0.0) return t;
  const double e1 = cutoff_eta_prime(tau) / spec.delta_c;
  const double e2 = cutoff_eta_second(tau) / (spec.delta_c * spec.delta_c);
  // zeta_xx zeta^3 / E = eta''/4 - 3 eta'^2 / (16 eta)
  const double curv = 0.25 * e2 - 3.0 * e1 * e1 / (16.0 * eta);
  t.z4 = eta;
  t.gradient = eta + e1 * e1 / (16.0 * eta) + std::abs(curv);
  t.zeroth = eta + e1 * e1 * e1 * e1 / (256.0 * eta * eta * eta) + curv * curv / eta;
  return t;
}

}  // namespace

LocalizedEntropyReport localized_entropy_report(const Grid& grid, const Trajectory& trajectory, double n,
                                                const CutoffSpec& spec, double horizon) {
  spec.validate();
  if (!(horizon > 0.0)) throw ConfigError("localized_entropy_report: horizon must be positive");
  std::size_t count = 0;
  while (count < trajectory.frames.size() && trajectory.frames[count].t <= horizon * (1.0 + 1e-12)) ++count;
  if (count < 3) {
    throw ConfigError("localized_entropy_report: fewer than three frames cover [0, T]; trajectory too coarse");
  }
  if (trajectory.frames.front().t != 0.0) {
    throw ConfigError("localized_entropy_report: trajectory must start at t = 0");
  }

  const std::size_t nc = grid.n_cells();
  const auto& xc = grid.x_centers();
  const double dx = grid.dx();
  const double nu = spec.nu;

  std::vector<CutoffTerms> terms(nc);
  std::vector<double> geo(nc), geo_plus(nc), geo_minus(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    terms[i] = cutoff_terms(xc[i], spec);
    const double g = 1.0 - xc[i] * xc[i];
    geo[i] = std::pow(g, nu);
    geo_plus[i] = std::pow(g, nu + 2.0);
    geo_minus[i] = std::pow(g, nu - 2.0);
  }

  const auto abs_g0 = [n](double z) { return std::abs(entropy_g0(std::max(z, 0.0), n)); };

  struct Slice {
    double entropy = 0.0;  // int geo z4 |G0|
    double dissipation = 0.0;
    double gradient = 0.0;
    double zeroth = 0.0;
  };
  const auto slice = [&](const std::vector<double>& u) {
    Slice s;
    for (std::size_t i = 0; i < nc; ++i) {
      const CutoffTerms& c = terms[i];
      if (c.z4 == 0.0 && c.gradient == 0.0) continue;
      s.entropy += geo[i] * c.z4 * abs_g0(u[i]);
      // One-sided differences at the outermost cells.
      const std::size_t l = i == 0 ? 0 : i - 1;
      const std::size_t r = i + 1 == nc ? nc - 1 : i + 1;
      const double ux = (u[r] - u[l]) / ((r - l) * dx);
      double uxx = 0.0;
      if (i > 0 && i + 1 < nc) uxx = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
      s.dissipation += geo_plus[i] * uxx * uxx * c.z4;
      s.gradient += geo[i] * ux * ux * c.gradient;
      s.zeroth += geo_minus[i] * u[i] * u[i] * c.zeroth;
    }
    s.entropy *= dx;
    s.dissipation *= dx;
    s.gradient *= dx;
    s.zeroth *= dx;
    return s;
  };

  LocalizedEntropyReport rep;
  rep.cutoff = spec;
  rep.horizon = horizon;
  const auto& frames = trajectory.frames;
  Slice prev = slice(frames[0].u);
  rep.rhs_initial = prev.entropy;
  double prev_t = frames[0].t;
  double prev_e = 1.0;
  for (std::size_t k = 1; k < count; ++k) {
    const Slice cur = slice(frames[k].u);
    const double t = frames[k].t;
    const double e = std::exp(-t / horizon);
    const double h = 0.5 * (t - prev_t);
    rep.lhs_time_weight += h * (prev_e * prev.entropy + e * cur.entropy) / horizon;
    rep.dissipation += h * (prev_e * prev.dissipation + e * cur.dissipation);
    rep.rhs_gradient += h * (prev_e * prev.gradient + e * cur.gradient);
    rep.rhs_zeroth += h * (prev_e * prev.zeroth + e * cur.zeroth);
    if (k + 1 == count) rep.lhs_entropy_T = e * cur.entropy;
    prev = cur;
    prev_t = t;
    prev_e = e;
  }
  return rep;
}

}  // namespace thinfilm
