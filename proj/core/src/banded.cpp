#include "thinfilm/banded.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace thinfilm {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), data_(n * (2 * kl + ku + 1), 0.0), pivots_(n) {}

bool BandedMatrix::in_band(std::size_t i, std::size_t j) const {
  return i < n_ && j < n_ && i <= j + kl_ && j <= i + ku_;
}

double& BandedMatrix::operator()(std::size_t i, std::size_t j) {
  assert(in_band(i, j));
  return at(i, j);
}

double BandedMatrix::operator()(std::size_t i, std::size_t j) const {
  assert(in_band(i, j));
  return at(i, j);
}

void BandedMatrix::set_zero() {
  std::fill(data_.begin(), data_.end(), 0.0);
  factored_ = false;
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i >= kl_ ? i - kl_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + ku_);
    double acc = 0.0;
    for (std::size_t j = j0; j <= j1; ++j) acc += at(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

bool BandedMatrix::factorize() {
  const std::size_t ku_fill = kl_ + ku_;
  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t last_row = std::min(n_ - 1, k + kl_);
    std::size_t p = k;
    double best = std::abs(at(k, k));
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      if (std::abs(at(i, k)) > best) {
        best = std::abs(at(i, k));
        p = i;
      }
    }
    pivots_[k] = p;
    if (best == 0.0) return false;
    const std::size_t last_col = std::min(n_ - 1, k + ku_fill);
    if (p != k) {
      for (std::size_t j = k; j <= last_col; ++j) std::swap(at(k, j), at(p, j));
    }
    const double inv = 1.0 / at(k, k);
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      const double l = at(i, k) * inv;
      at(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j <= last_col; ++j) at(i, j) -= l * at(k, j);
    }
  }
  factored_ = true;
  return true;
}

void BandedMatrix::solve(std::span<double> b) const {
  assert(factored_);
  const std::size_t ku_fill = kl_ + ku_;
  for (std::size_t k = 0; k < n_; ++k) {
    if (pivots_[k] != k) std::swap(b[k], b[pivots_[k]]);
    const std::size_t last_row = std::min(n_ - 1, k + kl_);
    for (std::size_t i = k + 1; i <= last_row; ++i) b[i] -= at(i, k) * b[k];
  }
  for (std::size_t kk = n_; kk-- > 0;) {
    const std::size_t last_col = std::min(n_ - 1, kk + ku_fill);
    double acc = b[kk];
    for (std::size_t j = kk + 1; j <= last_col; ++j) acc -= at(kk, j) * b[j];
    b[kk] = acc / at(kk, kk);
  }
}

}  // namespace thinfilm
