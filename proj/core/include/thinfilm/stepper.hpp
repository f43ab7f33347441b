#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <utility>

#include "thinfilm/banded.hpp"
#include "thinfilm/geometry.hpp"
#include "thinfilm/model.hpp"
#include "thinfilm/trajectory.hpp"

namespace thinfilm {

struct StepperConfig {
  double dt_init = 1e-12;
  double dt_min = 1e-16;
  double dt_max = 1e-2;
  /// Max-norm of the residual divided by max|u|.
  double newton_tol = 1e-10;
  int newton_max_iter = 20;
  /// Steps converging in at most this many iterations grow dt.
  int fast_iters = 4;
  double growth = 1.5;
  double shrink = 0.5;
  /// Steps with min u below -tol * max u0 are rejected. +inf disables.
  double negativity_reject_tol = 1e-8;
  /// Hard cap on accepted plus rejected steps per run.
  long max_steps = 2'000'000;

  void validate() const;
};

enum class StepReason { converged, diverged, negativity, non_finite };

std::string_view to_string(StepReason reason);

struct StepOutcome {
  bool accepted = false;
  int newton_iters = 0;
  double residual_norm = 0.0;
  StepReason reason = StepReason::diverged;
};

/// Banded Jacobian d rhs / d u (bandwidth 2), analytic.
BandedMatrix rhs_jacobian(const Grid& grid, const ModelParams& params, std::span<const double> u);

/// Same Jacobian by central differences with relative step h.
BandedMatrix rhs_jacobian_fd(const Grid& grid, const ModelParams& params, std::span<const double> u,
                             double h = 1e-6);

/// Solves u' - u - dt rhs(u') = 0 by Newton's method. The input state is
/// never modified; on rejection the returned state is a copy of the input.
/// u0_max is the reference for the negativity test.
std::pair<State, StepOutcome> backward_euler_step(const State& state, double dt, const Grid& grid,
                                                  const ModelParams& params, const StepperConfig& config,
                                                  double u0_max);

/// Next step size, or nullopt when a rejection happens at dt_min.
std::optional<double> adapt_dt(const StepOutcome& outcome, double dt, const StepperConfig& config);

/// Support threshold used when none is configured:
/// max(10 eps^theta, 1e-6 max u0).
double default_threshold(const ModelParams& params, double u0_max);

struct RunOptions {
  /// <= 0 selects default_threshold().
  double threshold = 0.0;
  /// Lift the initial data by eps^theta (on by default).
  bool lift = true;
  /// Called after each output frame; returning false stops the run early.
  std::function<bool(const State&, const DiagnosticsRecord&)> on_frame;
  /// Called after every accepted step with the new state.
  std::function<void(const State&, const StepOutcome&, double dt)> on_step;
};

/// Integrates the two-bump scenario to t_end, recording a frame at t = 0 and
/// at each output time. Throws NumericalAbort on persistent rejection.
Trajectory run_scenario(const ScenarioSpec& scenario, const Grid& grid, const ModelParams& params,
                        const StepperConfig& config, const RunOptions& options = {});

}  // namespace thinfilm
