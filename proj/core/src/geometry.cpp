#include "thinfilm/geometry.hpp"

#include <cmath>
#include <string>

#include "thinfilm/error.hpp"

namespace thinfilm {

Grid::Grid(std::size_t n_cells, double delta) : Grid(n_cells, delta, true) {
  if (n_cells < 16) {
    throw ConfigError("grid: n_cells must be at least 16, got " + std::to_string(n_cells));
  }
}

Grid Grid::unchecked_for_tests(std::size_t n_cells, double delta) {
  return Grid(n_cells, delta, true);
}

Grid::Grid(std::size_t n_cells, double delta, bool)
    : n_cells_(n_cells), dx_(0.0), delta_(delta) {
  if (n_cells < 2 || n_cells % 2 != 0) {
    throw ConfigError("grid: n_cells must be even, got " + std::to_string(n_cells));
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw ConfigError("grid: delta must be finite and >= 0");
  }
  dx_ = 2.0 / static_cast<double>(n_cells);
  faces_.resize(n_cells + 1);
  centers_.resize(n_cells);
  for (std::size_t i = 0; i <= n_cells; ++i) {
    faces_[i] = -1.0 + static_cast<double>(i) * dx_;
  }
  faces_.back() = 1.0;
  for (std::size_t i = 0; i < n_cells; ++i) {
    centers_[i] = 0.5 * (faces_[i] + faces_[i + 1]);
  }
  w_centers_.resize(n_cells);
  w_faces_.resize(n_cells + 1);
  for (std::size_t i = 0; i < n_cells; ++i) w_centers_[i] = weight_at(centers_[i]);
  for (std::size_t i = 0; i <= n_cells; ++i) w_faces_[i] = weight_at(faces_[i]);
}

double Grid::weight_at(double x) const {
  if (!(std::abs(x) <= 1.0)) {
    throw ConfigError("weight_at: x outside [-1, 1]");
  }
  return 1.0 - x * x + delta_;
}

void CutoffSpec::validate() const {
  if (!(s > 0.0 && s <= 1.0)) throw ConfigError("cutoff: s must lie in (0, 1]");
  if (!(delta_c > 0.0 && delta_c <= s)) throw ConfigError("cutoff: delta_c must lie in (0, s]");
  if (!(nu > 1.0)) throw ConfigError("cutoff: nu must exceed 1");
}

double cutoff_eta(double tau) {
  if (tau <= 0.0) return 1.0;
  if (tau >= 1.0) return 0.0;
  return 1.0 - tau * tau * tau * (6.0 * tau * tau - 15.0 * tau + 10.0);
}

double cutoff_eta_prime(double tau) {
  if (tau <= 0.0 || tau >= 1.0) return 0.0;
  // -30 tau^2 (tau - 1)^2
  const double a = tau * (tau - 1.0);
  return -30.0 * a * a;
}

double cutoff_eta_second(double tau) {
  if (tau <= 0.0 || tau >= 1.0) return 0.0;
  return -60.0 * tau * (tau - 1.0) * (2.0 * tau - 1.0);
}

double cutoff_eta_sd(double x, const CutoffSpec& spec) {
  return cutoff_eta((std::abs(x) - (spec.s - spec.delta_c)) / spec.delta_c);
}

}  // namespace thinfilm
