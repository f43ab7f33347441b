#pragma once

#include <span>

#include "thinfilm/geometry.hpp"
#include "thinfilm/trajectory.hpp"

namespace thinfilm {

/// Sum of u_i dx.
double mass(const Grid& grid, std::span<const double> u);

/// 1/2 sum over interior faces of w_f ((u_{i+1} - u_i)/dx)^2 dx.
double energy(const Grid& grid, std::span<const double> u);

/// Sum of G0(u_i) dx. Entries in [-tol_neg, 0) count as 0; anything more
/// negative throws ConfigError.
double entropy_total(const Grid& grid, std::span<const double> u, double n, double tol_neg = 0.0);

/// Terms of the localized entropy inequality for the test function
/// zeta^4 = eta_{s,delta_c}(x) exp(-t/T), weighted by (1 - x^2)^nu.
struct LocalizedEntropyReport {
  /// int (1-x^2)^nu zeta^4(T) |G0(u(T))| dx
  double lhs_entropy_T = 0.0;
  /// -iint (1-x^2)^nu (zeta^4)_t |G0(u)| dx dt
  double lhs_time_weight = 0.0;
  /// iint (1-x^2)^{nu+2} u_xx^2 zeta^4 dx dt
  double dissipation = 0.0;
  /// int (1-x^2)^nu zeta^4(0) |G0(u0)| dx
  double rhs_initial = 0.0;
  /// iint (1-x^2)^nu u_x^2 [zeta^4 + zeta^2 zeta_x^2 + zeta^3 |zeta_xx|] dx dt
  double rhs_gradient = 0.0;
  /// iint (1-x^2)^{nu-2} u^2 [zeta^4 + zeta_x^4 + zeta^2 zeta_xx^2] dx dt
  double rhs_zeroth = 0.0;
  CutoffSpec cutoff;
  double horizon = 0.0;

  /// (lhs_entropy_T + lhs_time_weight + dissipation) / (rhs sum); 0 when both vanish.
  double ratio() const;
};

/// Evaluates the report on the frames of `trajectory` with t <= horizon.
/// Space: midpoint rule; time: trapezoid over frames. Requires at least
/// three frames in [0, horizon] (ConfigError otherwise).
LocalizedEntropyReport localized_entropy_report(const Grid& grid, const Trajectory& trajectory, double n,
                                                const CutoffSpec& spec, double horizon);

}  // namespace thinfilm
