#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "mcom/error.hpp"

namespace mcom::detail {

template <int N>
Eigen::Matrix<double, N, N> symplectic_form() {
  Eigen::Matrix<double, N, N> omega = Eigen::Matrix<double, N, N>::Zero();
  for (int k = 0; k < N / 2; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

// Squared symplectic eigenvalues of a positive-definite covariance matrix in
// ascending order. Uses the symmetric form M = V^{1/2} Omega V^{1/2}, whose
// M^T M has eigenvalues nu_k^2 (each twice), so degenerate spectra keep full
// precision.
template <int N>
std::array<double, N / 2> squared_symplectic_spectrum(
    const Eigen::Matrix<double, N, N>& v) {
  using Mat = Eigen::Matrix<double, N, N>;
  Eigen::SelfAdjointEigenSolver<Mat> local(v);
  if (local.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "eigensolver did not converge");
  }
  if (!(local.eigenvalues().minCoeff() > 0.0)) {
    throw Error(ErrorCode::NonPhysicalCM,
                "covariance matrix is not positive definite");
  }
  const Mat root = local.eigenvectors() *
                   local.eigenvalues().cwiseSqrt().asDiagonal() *
                   local.eigenvectors().transpose();
  const Mat m = root * symplectic_form<N>() * root;
  Eigen::SelfAdjointEigenSolver<Mat> sq(m.transpose() * m,
                                        Eigen::EigenvaluesOnly);
  if (sq.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "eigensolver did not converge");
  }
  std::array<double, N> all{};
  for (int i = 0; i < N; ++i) all[i] = sq.eigenvalues()[i];
  std::sort(all.begin(), all.end());
  std::array<double, N / 2> out{};
  for (int k = 0; k < N / 2; ++k) out[k] = 0.5 * (all[2 * k] + all[2 * k + 1]);
  return out;
}

}  // namespace mcom::detail
