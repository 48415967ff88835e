#include "mcom/lindyn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mcom/error.hpp"
#include "symplectic.hpp"

namespace mcom {

namespace {

using Mat36 = Eigen::Matrix<double, 36, 36>;
using Vec36 = Eigen::Matrix<double, 36, 1>;

}  // namespace

Mat6 DiffusionMatrix::dense() const {
  Mat6 m = Mat6::Zero();
  for (int i = 0; i < 6; ++i) m(i, i) = d[i];
  return m;
}

DriftMatrix build_drift(const EffectiveParams& e) {
  DriftMatrix out;
  Mat6& a = out.a;
  a(kXa, kXa) = -e.kappa_a;
  a(kXa, kYa) = e.delta_a_eff;
  a(kYa, kXa) = -e.delta_a_eff;
  a(kYa, kYa) = -e.kappa_a;
  a(kYa, kQ) = -2.0 * e.g_a_lin;

  a(kXc, kXc) = -e.kappa_c;
  a(kXc, kYc) = e.delta_c;
  a(kYc, kXc) = -e.delta_c;
  a(kYc, kYc) = -e.kappa_c;
  a(kYc, kQ) = -2.0 * e.g_c;

  a(kQ, kQ) = -e.gamma_m;
  a(kQ, kP) = e.omega_m;
  a(kP, kXa) = -2.0 * e.g_a_lin;
  a(kP, kXc) = -2.0 * e.g_c;
  a(kP, kQ) = -e.omega_m;
  a(kP, kP) = -e.gamma_m;
  return out;
}

DiffusionMatrix build_diffusion(const EffectiveParams& e) {
  const double mech = e.gamma_m * (2.0 * e.n_th + 1.0);
  return {{e.kappa_a, e.kappa_a, e.kappa_c, e.kappa_c, mech, mech}};
}

double max_real_eigenvalue(const DriftMatrix& a) {
  if (!a.a.allFinite()) {
    throw Error(ErrorCode::EigenFailure, "drift matrix has non-finite entries");
  }
  Eigen::EigenSolver<Mat6> solver(a.a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "eigensolver did not converge");
  }
  return solver.eigenvalues().real().maxCoeff();
}

bool is_stable_eigen(const DriftMatrix& a, double margin) {
  return max_real_eigenvalue(a) < -margin;
}

std::array<double, 7> characteristic_polynomial(const Mat6& a) {
  // M_1 = I, c_k = -tr(A M_k) / k, M_{k+1} = A M_k + c_k I.
  std::array<double, 7> c{};
  c[0] = 1.0;
  Mat6 m = Mat6::Identity();
  for (int k = 1; k <= 6; ++k) {
    const Mat6 am = a * m;
    c[k] = -am.trace() / k;
    m = am + c[k] * Mat6::Identity();
  }
  return c;
}

HurwitzVerdict routh_hurwitz(std::span<const double, 7> coeffs) {
  constexpr int n = 6;
  auto coef = [&](int k) { return (k < 0 || k > n) ? 0.0 : coeffs[k]; };

  // H(i, j) = a_{2j - i} with 1-based indices.
  Mat6 h;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) h(i, j) = coef(2 * (j + 1) - (i + 1));
  }

  HurwitzVerdict verdict;
  verdict.stable = coeffs[0] > 0.0;
  // A minor is degenerate when its first-order relative error under entrywise
  // perturbations of size kRelPerturbation, sum |H_ij| |H^-1_ji|, reaches one.
  constexpr double kRelPerturbation = 64.0 * std::numeric_limits<double>::epsilon();
  for (int k = 1; k <= n; ++k) {
    const Eigen::MatrixXd sub = h.topLeftCorner(k, k);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    const double minor = lu.determinant();
    verdict.minors[k - 1] = minor;
    double sensitivity = std::numeric_limits<double>::infinity();
    if (minor != 0.0) {
      sensitivity = sub.cwiseAbs().cwiseProduct(lu.inverse().transpose().cwiseAbs()).sum();
    }
    if (!(sensitivity * kRelPerturbation < 1.0)) {
      verdict.degenerate = true;
      verdict.stable = false;
    } else if (minor < 0.0) {
      verdict.stable = false;
    }
  }
  return verdict;
}

bool is_stable_rh(const DriftMatrix& a) {
  const auto coeffs = characteristic_polynomial(a.a);
  return routh_hurwitz(coeffs).stable;
}

double lyapunov_residual(const DriftMatrix& a, const DiffusionMatrix& d,
                         const CovarianceMatrix& cm) {
  const Mat6 r = a.a * cm.v + cm.v * a.a.transpose() + d.dense();
  return r.cwiseAbs().maxCoeff();
}

LyapunovSolution solve_lyapunov(const DriftMatrix& a, const DiffusionMatrix& d,
                                double margin) {
  if (!is_stable_eigen(a, margin)) {
    throw Error(ErrorCode::UnstableSystem,
                "drift matrix is not stable; no steady state exists");
  }

  // Column-major vec: vec(A V + V A^T) = (I (x) A + A (x) I) vec(V).
  Mat36 k = Mat36::Zero();
  for (int col = 0; col < 6; ++col) {
    k.block<6, 6>(6 * col, 6 * col) += a.a;
    for (int row = 0; row < 6; ++row) {
      k.block<6, 6>(6 * row, 6 * col).diagonal().array() += a.a(row, col);
    }
  }
  Vec36 rhs;
  const Mat6 dd = d.dense();
  for (int col = 0; col < 6; ++col) rhs.segment<6>(6 * col) = -dd.col(col);

  const Eigen::PartialPivLU<Mat36> lu(k);
  if (!(lu.rcond() > 1e-14)) {
    throw Error(ErrorCode::SingularSolve,
                "Lyapunov operator is numerically singular");
  }
  const Vec36 x = lu.solve(rhs);

  LyapunovSolution sol;
  const Mat6 v = Eigen::Map<const Mat6>(x.data());
  sol.asymmetry = (v - v.transpose()).cwiseAbs().maxCoeff();
  sol.cm.v = 0.5 * (v + v.transpose());
  sol.residual = lyapunov_residual(a, d, sol.cm);
  if (!std::isfinite(sol.residual)) {
    throw Error(ErrorCode::SingularSolve, "Lyapunov solution is not finite");
  }
  return sol;
}

std::array<double, 3> symplectic_spectrum(const CovarianceMatrix& cm) {
  const auto sq = detail::squared_symplectic_spectrum<6>(cm.v);
  return {std::sqrt(sq[0]), std::sqrt(sq[1]), std::sqrt(sq[2])};
}

}  // namespace mcom
