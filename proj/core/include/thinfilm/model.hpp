#pragma once

#include <span>
#include <vector>

#include "thinfilm/geometry.hpp"

namespace thinfilm {

/// How cell mobilities are combined at a face.
enum class FaceMean {
  arithmetic,  ///< (m(u_i) + m(u_{i+1})) / 2
  entropic,    ///< (u_{i+1} - u_i) / (G0'(u_{i+1}) - G0'(u_i)) + eps
  harmonic,    ///< 2 m_i m_{i+1} / (m_i + m_{i+1})
};

struct ModelParams {
  double n = 1.5;
  double eps = 1e-8;
  /// Exponent of the initial lift eps^theta.
  double theta_lift = 0.5;
  /// Restricts n to the finite-speed range 1 < n < 2.
  bool fsp_mode = false;
  FaceMean face_mean = FaceMean::arithmetic;

  /// Upper end of the admissible lift exponent interval, 1 / (2 (n - 1)),
  /// or +inf for n <= 1.
  double theta_upper() const;

  /// Half of theta_upper() when it is finite, 0.5 otherwise.
  static double default_theta(double n);

  /// Throws ConfigError on inadmissible combinations.
  void validate() const;
};

/// m(u) = |u|^n + eps.
double mobility(double u_val, const ModelParams& params);

/// Convex entropy density with G0'' = z^{-n}.
///   1 < n < 2 : z^{2-n} / ((n-1)(n-2))       (A = 0, G0(0) = 0, G0 <= 0)
///   n = 1     : z ln z - z + 1                (A = 1)
///   n = 2     : -ln z + z - 1                 (A = 1)
///   otherwise : (z^{2-n} - 1)/((n-1)(n-2)) - (z - 1)/(1 - n)   (A = 1)
/// Throws ConfigError for z < 0.
double entropy_g0(double z, double n);

/// G0'(z) up to an additive constant: z^{1-n}/(1-n), or ln z for n = 1.
double entropy_g0_prime(double z, double n);

/// u0 + eps^theta elementwise.
std::vector<double> lift_initial_data(std::span<const double> u0, const ModelParams& params);

/// v = w u_x at the n_cells + 1 faces; zero at both boundary faces.
std::vector<double> weighted_gradient(const Grid& grid, std::span<const double> u);

/// Face mobility and its partial derivatives with respect to the two
/// adjacent cell values.
struct FaceMobility {
  double m;
  double dm_dleft;
  double dm_dright;
};
FaceMobility face_mobility(double left, double right, const ModelParams& params);

/// J = w m ((w u_x)_xx) at faces; zero at both boundary faces. Throws
/// NumericalAbort if any face value is non-finite.
std::vector<double> flux(const Grid& grid, const ModelParams& params, std::span<const double> u);

/// du/dt = -(J_{i+1/2} - J_{i-1/2}) / dx.
std::vector<double> rhs(const Grid& grid, const ModelParams& params, std::span<const double> u);

/// Two-bump initial data and run horizon.
struct ScenarioSpec {
  double r0 = 0.3;
  /// Bump center and half-width for the right bump; mirrored at -center.
  double bump_center = 0.36;
  double bump_width = 0.06;
  double amplitude = 1.0;
  /// Profile exponent k in A (1 - s^2)^k; the edge is C^{k-1}.
  int bump_power = 2;
  double t_end = 1e-2;
  /// Number of output frames after t = 0.
  int output_cadence = 100;
  /// Outputs at t_end * 10^{-k (1 - j/count)} (geometric) or evenly spaced.
  bool geometric_output = true;
  double output_decades = 6.0;
  double margin = 0.05;
  /// End the run once the dead-core half-width drops to this value after an
  /// accepted step (0 disables). The final frame is the state at that step.
  double stop_halfwidth = 0.0;

  void validate() const;

  /// Bump profile A (1 - s^2)^k, s = (|x| - center) / width, cell-averaged by
  /// exact integration of the polynomial over each cell.
  std::vector<double> initial_profile(const Grid& grid) const;

  /// Closed-form integral of the profile over (-1, 1).
  double exact_mass() const;

  /// Output times, strictly increasing, last one equal to t_end.
  std::vector<double> output_times() const;
};

}  // namespace thinfilm
