#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "thinfilm/geometry.hpp"
#include "thinfilm/trajectory.hpp"

namespace thinfilm {

/// Largest rho in [0, 1] such that u < threshold on every cell with
/// |x_i| < rho, interpolated linearly at the first crossing on each side.
/// The smaller of the left and right values is returned.
double dead_core_halfwidth(const Grid& grid, std::span<const double> u, double threshold);

struct FrontTrace {
  std::vector<double> times;
  std::vector<double> gamma;
  double r0 = 0.0;
  double threshold = 0.0;
};

/// Gamma(t_k) = max(0, r0 - rho(t_k)), made nondecreasing by a running max
/// and pinned to 0 at the first frame.
FrontTrace penetration_series(const Grid& grid, const Trajectory& trajectory, double r0, double threshold);

/// Same from precomputed half-widths.
FrontTrace penetration_series(std::span<const double> times, std::span<const double> halfwidths, double r0,
                              double threshold);

struct RateFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  std::size_t samples = 0;
};

struct FitWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
  /// Samples with gamma <= floor are excluded (resolution floor, 2 dx).
  double gamma_floor = 0.0;
  /// Samples with gamma >= ceiling are excluded (fronts have met).
  double gamma_ceiling = INFINITY;
};

/// Default window: t in (0, 0.9 t_last], 2 dx < gamma < 0.9 r0.
FitWindow default_window(const FrontTrace& trace, double dx);

/// Ordinary least squares of log gamma on log t. Throws ConfigError when
/// fewer than 8 samples fall in the window.
RateFit fit_power_law(const FrontTrace& trace, const FitWindow& window);

enum class ExponentKind { optimal, coarse };

/// 1/(n+4) (optimal) or (2-n)/(8-3n) (coarse). Requires 1 < n < 2.
double predicted_exponent(double n, ExponentKind kind);

}  // namespace thinfilm
