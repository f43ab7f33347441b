#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace thinfilm {

/// Square band matrix with kl sub- and ku super-diagonals, factorized in
/// place by Gaussian elimination with partial pivoting. Fill-in from row
/// swaps is stored in kl extra super-diagonals, LAPACK style.
class BandedMatrix {
 public:
  BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

  std::size_t size() const { return n_; }
  std::size_t lower() const { return kl_; }
  std::size_t upper() const { return ku_; }

  /// Entry (i, j); requires -kl <= j - i <= ku.
  double& operator()(std::size_t i, std::size_t j);
  double operator()(std::size_t i, std::size_t j) const;

  bool in_band(std::size_t i, std::size_t j) const;

  void set_zero();

  /// y = A x, only valid before factorize().
  std::vector<double> multiply(std::span<const double> x) const;

  /// Returns false if a zero pivot is met.
  bool factorize();

  /// Overwrites b with the solution; requires a successful factorize().
  void solve(std::span<double> b) const;

 private:
  double& at(std::size_t i, std::size_t j) { return data_[j * ld_ + (kl_ + ku_ + i - j)]; }
  double at(std::size_t i, std::size_t j) const { return data_[j * ld_ + (kl_ + ku_ + i - j)]; }

  std::size_t n_, kl_, ku_, ld_;
  std::vector<double> data_;
  std::vector<std::size_t> pivots_;
  bool factored_ = false;
};

}  // namespace thinfilm
