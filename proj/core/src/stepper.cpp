#include "thinfilm/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "thinfilm/diagnostics.hpp"
#include "thinfilm/error.hpp"
#include "thinfilm/fronts.hpp"

namespace thinfilm {

void StepperConfig::validate() const {
  if (!(dt_min > 0.0 && dt_min <= dt_init && dt_init <= dt_max)) {
    throw ConfigError("stepper: require 0 < dt_min <= dt_init <= dt_max");
  }
  if (!(newton_tol > 0.0)) throw ConfigError("stepper: newton_tol must be positive");
  if (newton_max_iter < 1) throw ConfigError("stepper: newton_max_iter must be at least 1");
  if (!(growth >= 1.0)) throw ConfigError("stepper: growth factor must be >= 1");
  if (!(shrink > 0.0 && shrink < 1.0)) throw ConfigError("stepper: shrink factor must lie in (0, 1)");
  if (!(negativity_reject_tol >= 0.0)) throw ConfigError("stepper: negativity_reject_tol must be >= 0");
}

std::string_view to_string(StepReason reason) {
  switch (reason) {
    case StepReason::converged: return "converged";
    case StepReason::diverged: return "diverged";
    case StepReason::negativity: return "negativity";
    case StepReason::non_finite: return "non_finite";
  }
  return "unknown";
}

BandedMatrix rhs_jacobian(const Grid& grid, const ModelParams& params, std::span<const double> u) {
  const std::size_t nc = grid.n_cells();
  if (u.size() != nc) throw ConfigError("rhs_jacobian: size mismatch");
  const auto& wf = grid.w_faces();
  const double inv_dx = 1.0 / grid.dx();
  const double inv_dx2 = inv_dx * inv_dx;

  const auto v = weighted_gradient(grid, u);
  std::vector<double> q(nc);
  for (std::size_t i = 0; i < nc; ++i) q[i] = (v[i + 1] - v[i]) * inv_dx;

  // dq_i/du_{i-1}, dq_i/du_i, dq_i/du_{i+1}; boundary faces carry no v.
  const auto interior = [nc](std::size_t f) { return f > 0 && f < nc; };
  std::vector<double> dq_m(nc), dq_0(nc), dq_p(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    const double wl = interior(i) ? wf[i] : 0.0;
    const double wr = interior(i + 1) ? wf[i + 1] : 0.0;
    dq_m[i] = wl * inv_dx2;
    dq_0[i] = -(wl + wr) * inv_dx2;
    dq_p[i] = wr * inv_dx2;
  }

  BandedMatrix jac(nc, 2, 2);
  // Face f sits between cells a = f-1 and b = f; J_f = w_f m_f (q_b - q_a)/dx
  // depends on cells f-2 .. f+1.
  for (std::size_t f = 1; f < nc; ++f) {
    const std::size_t a = f - 1;
    const std::size_t b = f;
    const FaceMobility fm = face_mobility(u[a], u[b], params);
    const double d = (q[b] - q[a]) * inv_dx;
    double djf[4] = {0.0, 0.0, 0.0, 0.0};  // wrt cells f-2, f-1, f, f+1
    // dD/du_k = (dq_b/du_k - dq_a/du_k)/dx
    djf[0] = -dq_m[a];
    djf[1] = dq_m[b] - dq_0[a];
    djf[2] = dq_0[b] - dq_p[a];
    djf[3] = dq_p[b];
    for (double& e : djf) e *= fm.m * inv_dx;
    djf[1] += fm.dm_dleft * d;
    djf[2] += fm.dm_dright * d;
    for (double& e : djf) e *= wf[f];
    // rhs_a gets +J_f/dx (J_f is its right face), rhs_b gets -J_f/dx.
    for (int c = 0; c < 4; ++c) {
      const long k = static_cast<long>(f) - 2 + c;
      if (k < 0 || k >= static_cast<long>(nc)) continue;
      const auto kk = static_cast<std::size_t>(k);
      jac(a, kk) -= djf[c] * inv_dx;
      jac(b, kk) += djf[c] * inv_dx;
    }
  }
  return jac;
}

BandedMatrix rhs_jacobian_fd(const Grid& grid, const ModelParams& params, std::span<const double> u, double h) {
  const std::size_t nc = grid.n_cells();
  BandedMatrix jac(nc, 2, 2);
  std::vector<double> up(u.begin(), u.end());
  for (std::size_t k = 0; k < nc; ++k) {
    const double step = h * std::max(1.0, std::abs(u[k]));
    up[k] = u[k] + step;
    const auto fp = rhs(grid, params, up);
    up[k] = u[k] - step;
    const auto fm = rhs(grid, params, up);
    up[k] = u[k];
    const std::size_t i0 = k >= 2 ? k - 2 : 0;
    const std::size_t i1 = std::min(nc - 1, k + 2);
    for (std::size_t i = i0; i <= i1; ++i) jac(i, k) = (fp[i] - fm[i]) / (2.0 * step);
  }
  return jac;
}

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::pair<State, StepOutcome> backward_euler_step(const State& state, double dt, const Grid& grid,
                                                  const ModelParams& params, const StepperConfig& config,
                                                  double u0_max) {
  if (!(dt > 0.0)) throw ConfigError("backward_euler_step: dt must be positive");
  const std::size_t nc = grid.n_cells();
  if (state.u.size() != nc) throw ConfigError("backward_euler_step: state size does not match grid");

  StepOutcome out;
  const auto reject = [&](StepReason why) {
    out.accepted = false;
    out.reason = why;
    return std::pair<State, StepOutcome>{state, out};
  };

  const double scale = std::max(max_abs(state.u), std::numeric_limits<double>::min());
  std::vector<double> next = state.u;
  std::vector<double> residual(nc);
  const auto eval_residual = [&]() -> bool {
    std::vector<double> r;
    try {
      r = rhs(grid, params, next);
    } catch (const NumericalAbort&) {
      return false;
    }
    for (std::size_t i = 0; i < nc; ++i) residual[i] = next[i] - state.u[i] - dt * r[i];
    return all_finite(residual);
  };

  bool converged = false;
  for (int iter = 0;; ++iter) {
    if (!eval_residual()) return reject(StepReason::non_finite);
    out.residual_norm = max_abs(residual) / scale;
    out.newton_iters = iter;
    if (out.residual_norm <= config.newton_tol) {
      converged = true;
      break;
    }
    if (iter == config.newton_max_iter) break;

    BandedMatrix jac = rhs_jacobian(grid, params, next);
    for (std::size_t i = 0; i < nc; ++i) {
      const std::size_t j0 = i >= 2 ? i - 2 : 0;
      const std::size_t j1 = std::min(nc - 1, i + 2);
      for (std::size_t j = j0; j <= j1; ++j) jac(i, j) *= -dt;
      jac(i, i) += 1.0;
    }
    if (!jac.factorize()) return reject(StepReason::diverged);
    jac.solve(residual);
    for (std::size_t i = 0; i < nc; ++i) next[i] -= residual[i];
    if (!all_finite(next)) return reject(StepReason::non_finite);
  }
  if (!converged) return reject(StepReason::diverged);

  if (std::isfinite(config.negativity_reject_tol)) {
    const double floor = -config.negativity_reject_tol * u0_max;
    if (*std::min_element(next.begin(), next.end()) < floor) return reject(StepReason::negativity);
  }
  out.accepted = true;
  out.reason = StepReason::converged;
  return {State{state.t + dt, std::move(next)}, out};
}

std::optional<double> adapt_dt(const StepOutcome& outcome, double dt, const StepperConfig& config) {
  if (!outcome.accepted) {
    if (dt <= config.dt_min * (1.0 + 1e-12)) return std::nullopt;
    return std::clamp(dt * config.shrink, config.dt_min, config.dt_max);
  }
  if (outcome.newton_iters <= config.fast_iters) dt *= config.growth;
  return std::clamp(dt, config.dt_min, config.dt_max);
}

double default_threshold(const ModelParams& params, double u0_max) {
  const double lift = params.eps > 0.0 ? std::pow(params.eps, params.theta_lift) : 0.0;
  return std::max(10.0 * lift, 1e-6 * u0_max);
}

namespace {

std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

DiagnosticsRecord make_record(const Grid& grid, const ModelParams& params, const State& s, double threshold,
                              double tol_neg) {
  DiagnosticsRecord rec;
  rec.t = s.t;
  rec.mass = mass(grid, s.u);
  rec.energy = energy(grid, s.u);
  rec.entropy = entropy_total(grid, s.u, params.n, std::isfinite(tol_neg) ? tol_neg : std::numeric_limits<double>::infinity());
  rec.min_u = *std::min_element(s.u.begin(), s.u.end());
  rec.dead_core_halfwidth = dead_core_halfwidth(grid, s.u, threshold);
  return rec;
}

}  // namespace

Trajectory run_scenario(const ScenarioSpec& scenario, const Grid& grid, const ModelParams& params,
                        const StepperConfig& config, const RunOptions& options) {
  scenario.validate();
  params.validate();
  config.validate();

  const auto profile = scenario.initial_profile(grid);
  State state{0.0, options.lift ? lift_initial_data(profile, params) : profile};

  Trajectory traj;
  traj.u0_max = max_abs(state.u);
  traj.threshold = options.threshold > 0.0 ? options.threshold : default_threshold(params, traj.u0_max);
  const double tol_neg = config.negativity_reject_tol * traj.u0_max;

  const auto emit = [&](const State& s, const DiagnosticsRecord& rec) {
    traj.frames.push_back(s);
    traj.records.push_back(rec);
    return !options.on_frame || options.on_frame(s, rec);
  };

  DiagnosticsRecord rec = make_record(grid, params, state, traj.threshold, tol_neg);
  if (!emit(state, rec)) {
    traj.termination = "stopped";
    return traj;
  }

  const auto outputs = scenario.output_times();
  double dt = config.dt_init;
  long steps = 0;
  long rejected = 0;
  double last_dt = 0.0;
  int last_iters = 0;
  for (double t_out : outputs) {
    while (state.t < t_out) {
      if (steps + rejected >= config.max_steps) {
        throw NumericalAbort("run_scenario: step budget of " + std::to_string(config.max_steps) +
                             " exhausted at t = " + format_time(state.t));
      }
      const double remaining = t_out - state.t;
      // Land exactly on the output time; absorb slivers into this step.
      const bool final_step = dt >= remaining * (1.0 - 1e-9);
      const double dt_step = final_step ? remaining : dt;
      auto [next, outcome] = backward_euler_step(state, dt_step, grid, params, config, traj.u0_max);
      if (!outcome.accepted) {
        ++rejected;
        ++traj.rejections[static_cast<std::size_t>(outcome.reason)];
        const auto shrunk = adapt_dt(outcome, std::min(dt, dt_step), config);
        if (!shrunk) {
          throw NumericalAbort("run_scenario: step rejected at dt_min (" + std::string(to_string(outcome.reason)) +
                               ") at t = " + format_time(state.t));
        }
        dt = *shrunk;
        continue;
      }
      ++steps;
      last_dt = dt_step;
      last_iters = outcome.newton_iters;
      if (final_step) next.t = t_out;
      state = std::move(next);
      if (options.on_step) options.on_step(state, outcome, dt_step);
      if (!final_step || dt_step >= dt * (1.0 - 1e-9)) dt = *adapt_dt(outcome, dt, config);
      if (scenario.stop_halfwidth > 0.0 &&
          dead_core_halfwidth(grid, state.u, traj.threshold) <= scenario.stop_halfwidth) {
        rec = make_record(grid, params, state, traj.threshold, tol_neg);
        rec.dt_used = last_dt;
        rec.newton_iters = last_iters;
        rec.steps = steps;
        rec.rejected = rejected;
        emit(state, rec);
        traj.termination = "fronts_met";
        return traj;
      }
    }
    rec = make_record(grid, params, state, traj.threshold, tol_neg);
    rec.dt_used = last_dt;
    rec.newton_iters = last_iters;
    rec.steps = steps;
    rec.rejected = rejected;
    if (!emit(state, rec)) {
      traj.termination = "stopped";
      return traj;
    }
  }
  return traj;
}

}  // namespace thinfilm
