#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "semiq/qsim/unitary.hpp"
#include "semiq/rng.hpp"

namespace semiq::qsim {

/// Haar-distributed random unitary via QR of a complex Gaussian matrix with
/// the R-diagonal phase fix (Mezzadri's recipe).
inline Unitary haar_random_unitary(std::size_t dim, SplitStream& rng) {
  auto gaussian = [&rng]() {
    // Box-Muller; u1 nudged away from 0.
    const double u1 = rng.uniform() + 1e-300;
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return std::complex<double>(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
  };

  Eigen::MatrixXcd z(dim, dim);
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = gaussian();

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const std::complex<double> d = r(j, j);
    const std::complex<double> phase = d / std::abs(d);
    q.col(j) *= phase;
  }

  std::vector<std::complex<double>> entries(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      entries[i * dim + j] = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return Unitary(dim, std::move(entries));
}

}  // namespace semiq::qsim
