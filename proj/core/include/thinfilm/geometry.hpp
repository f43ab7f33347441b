#pragma once

#include <cstddef>
#include <vector>

namespace thinfilm {

/// Uniform cell partition of (-1, 1) carrying the regularized pole weight
/// w(x) = 1 - x^2 + delta.
class Grid {
 public:
  /// Requires an even cell count of at least 16 and delta >= 0.
  Grid(std::size_t n_cells, double delta);

  /// Same as the constructor but only enforces evenness and n_cells >= 2.
  /// Meant for hand-checkable unit tests on tiny meshes.
  static Grid unchecked_for_tests(std::size_t n_cells, double delta);

  std::size_t n_cells() const { return n_cells_; }
  double dx() const { return dx_; }
  double delta() const { return delta_; }
  const std::vector<double>& x_centers() const { return centers_; }
  const std::vector<double>& x_faces() const { return faces_; }

  /// Cached w at cell centers / faces.
  const std::vector<double>& w_centers() const { return w_centers_; }
  const std::vector<double>& w_faces() const { return w_faces_; }

  /// 1 - x^2 + delta; throws ConfigError for |x| > 1.
  double weight_at(double x) const;

 private:
  Grid(std::size_t n_cells, double delta, bool);

  std::size_t n_cells_;
  double dx_;
  double delta_;
  std::vector<double> centers_;
  std::vector<double> faces_;
  std::vector<double> w_centers_;
  std::vector<double> w_faces_;
};

/// Shell cutoff eta_{s,delta_c}: 1 on |x| <= s - delta_c, 0 for |x| >= s.
struct CutoffSpec {
  double s = 1.0;
  double delta_c = 0.5;
  double nu = 2.0;

  /// Throws ConfigError unless 0 < delta_c <= s <= 1 and nu > 1.
  void validate() const;
};

/// C^2 quintic smoothstep: 1 for tau <= 0, 1 - tau^3 (6 tau^2 - 15 tau + 10)
/// on (0, 1), 0 for tau >= 1.
double cutoff_eta(double tau);
double cutoff_eta_prime(double tau);
double cutoff_eta_second(double tau);

double cutoff_eta_sd(double x, const CutoffSpec& spec);

}  // namespace thinfilm
