#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semiq/qsim/state_vector.hpp"

namespace semiq::qsim {

/// Density matrix over a small register, row-major storage.
class DensityMatrix {
 public:
  DensityMatrix(std::size_t dim, std::vector<Amplitude> entries)
      : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0) throw std::invalid_argument("density: dimension must be positive");
    if (entries_.size() != dim_ * dim_)
      throw std::invalid_argument("density: entry count must be dim*dim");
  }

  static DensityMatrix zero(std::size_t dim) {
    return DensityMatrix(dim, std::vector<Amplitude>(dim * dim, Amplitude{0, 0}));
  }

  static DensityMatrix from_pure(const StateVector& psi) {
    const std::size_t d = psi.dim();
    std::vector<Amplitude> e(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        e[i * d + j] = psi.amplitudes()[i] * std::conj(psi.amplitudes()[j]);
    return DensityMatrix(d, std::move(e));
  }

  std::size_t dim() const { return dim_; }
  Amplitude entry(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  Amplitude& entry(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const std::vector<Amplitude>& entries() const { return entries_; }

  Amplitude trace() const {
    Amplitude t{0, 0};
    for (std::size_t i = 0; i < dim_; ++i) t += entry(i, i);
    return t;
  }

  double hermiticity_residual() const {
    double worst = 0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        worst = std::max(worst, std::abs(entry(i, j) - std::conj(entry(j, i))));
    return worst;
  }

  std::vector<double> eigenvalues() const {
    Eigen::MatrixXcd m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
  }

  /// Hermitian within tol, unit trace within tol, eigenvalues >= -tol.
  bool is_valid_state(double tol = kTolerance) const {
    if (hermiticity_residual() > tol) return false;
    if (std::abs(trace() - Amplitude{1, 0}) > tol) return false;
    for (double ev : eigenvalues())
      if (ev < -tol) return false;
    return true;
  }

  DensityMatrix& add_scaled(const DensityMatrix& other, double weight) {
    if (other.dim_ != dim_) throw std::invalid_argument("density: dimension mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += weight * other.entries_[i];
    return *this;
  }

  /// Kronecker product, `this` on the high-order qubits.
  DensityMatrix tensor(const DensityMatrix& other) const {
    const std::size_t d = dim_ * other.dim_;
    std::vector<Amplitude> e(d * d);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < other.dim_; ++k)
          for (std::size_t l = 0; l < other.dim_; ++l)
            e[(i * other.dim_ + k) * d + (j * other.dim_ + l)] =
                entry(i, j) * other.entry(k, l);
    return DensityMatrix(d, std::move(e));
  }

 private:
  std::size_t dim_;
  std::vector<Amplitude> entries_;
};

/// Reduced density matrix of the kept qubits (row index bits ordered as in
/// `keep`, first kept qubit most significant).
inline DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep list is empty");
  detail::check_targets(psi, keep);

  std::vector<std::size_t> keep_masks(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep_masks[i] = psi.qubit_mask(keep[i]);
  std::vector<std::size_t> rest_masks;
  for (int q = 0; q < psi.num_qubits(); ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end())
      rest_masks.push_back(psi.qubit_mask(q));

  const std::size_t keep_dim = std::size_t{1} << keep.size();
  const std::size_t rest_count = std::size_t{1} << rest_masks.size();
  std::vector<Amplitude> entries(keep_dim * keep_dim, Amplitude{0, 0});
  for (std::size_t i = 0; i < keep_dim; ++i) {
    const std::size_t ibits = detail::scatter_bits(i, keep_masks);
    for (std::size_t j = 0; j < keep_dim; ++j) {
      const std::size_t jbits = detail::scatter_bits(j, keep_masks);
      Amplitude acc{0, 0};
      for (std::size_t r = 0; r < rest_count; ++r) {
        const std::size_t base = detail::scatter_bits(r, rest_masks);
        acc += psi.amplitudes()[base | ibits] * std::conj(psi.amplitudes()[base | jbits]);
      }
      entries[i * keep_dim + j] = acc;
    }
  }
  return DensityMatrix(keep_dim, std::move(entries));
}

/// (1/2) sum of |eigenvalues| of a-b. In [0,1] for states.
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  DensityMatrix diff = a;
  diff.add_scaled(b, -1.0);
  double sum = 0;
  for (double ev : diff.eigenvalues()) sum += std::abs(ev);
  return 0.5 * sum;
}

}  // namespace semiq::qsim
