#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semiq/rng.hpp"

namespace semiq::qsim {

/// Square unitary matrix over a power-of-two dimension, row-major storage.
/// Construction rejects matrices whose unitarity residual max|UU+ - I|
/// exceeds the tolerance.
class Unitary {
 public:
  static constexpr double kUnitarityTolerance = 1e-9;

  Unitary(std::size_t dim, std::vector<std::complex<double>> entries)
      : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0 || (dim_ & (dim_ - 1)) != 0)
      throw std::invalid_argument("unitary: dimension must be a power of two");
    if (entries_.size() != dim_ * dim_)
      throw std::invalid_argument("unitary: entry count must be dim*dim");
    const double residual = unitarity_residual();
    if (residual > kUnitarityTolerance)
      throw std::invalid_argument("unitary: matrix is not unitary (residual " +
                                  std::to_string(residual) + ")");
  }

  std::size_t dim() const { return dim_; }
  std::complex<double> entry(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  const std::vector<std::complex<double>>& entries() const { return entries_; }

  /// max_ij |(U U+ - I)_ij|, useful for reporting why validation failed.
  double unitarity_residual() const {
    double worst = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        std::complex<double> acc{0, 0};
        for (std::size_t k = 0; k < dim_; ++k) acc += entry(i, k) * std::conj(entry(j, k));
        if (i == j) acc -= 1.0;
        worst = std::max(worst, std::abs(acc));
      }
    }
    return worst;
  }

  Unitary adjoint() const {
    std::vector<std::complex<double>> out(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out[j * dim_ + i] = std::conj(entry(i, j));
    return Unitary(dim_, std::move(out));
  }

  static Unitary identity(std::size_t dim) {
    std::vector<std::complex<double>> e(dim * dim, {0, 0});
    for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = {1, 0};
    return Unitary(dim, std::move(e));
  }

  /// Two-qubit CNOT over basis |control target>: flips the target when the
  /// control is 1.
  static Unitary cnot() {
    std::vector<std::complex<double>> e(16, {0, 0});
    e[0 * 4 + 0] = {1, 0};
    e[1 * 4 + 1] = {1, 0};
    e[2 * 4 + 3] = {1, 0};
    e[3 * 4 + 2] = {1, 0};
    return Unitary(4, std::move(e));
  }

  /// Two-qubit gate over |target probe>: rotates the probe by `theta` only
  /// when the target is 1. At theta = 0 this is the identity; at theta =
  /// pi/2 the probe becomes a full copy of the target.
  static Unitary controlled_probe_rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    std::vector<std::complex<double>> e(16, {0, 0});
    e[0 * 4 + 0] = {1, 0};
    e[1 * 4 + 1] = {1, 0};
    e[2 * 4 + 2] = {c, 0};
    e[2 * 4 + 3] = {-s, 0};
    e[3 * 4 + 2] = {s, 0};
    e[3 * 4 + 3] = {c, 0};
    return Unitary(4, std::move(e));
  }

  /// Hadamard on the probe wire of a |target probe> pair, target untouched.
  static Unitary probe_hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<std::complex<double>> e(16, {0, 0});
    e[0 * 4 + 0] = {r, 0};
    e[0 * 4 + 1] = {r, 0};
    e[1 * 4 + 0] = {r, 0};
    e[1 * 4 + 1] = {-r, 0};
    e[2 * 4 + 2] = {r, 0};
    e[2 * 4 + 3] = {r, 0};
    e[3 * 4 + 2] = {r, 0};
    e[3 * 4 + 3] = {-r, 0};
    return Unitary(4, std::move(e));
  }

 private:
  std::size_t dim_;
  std::vector<std::complex<double>> entries_;
};

}  // namespace semiq::qsim
