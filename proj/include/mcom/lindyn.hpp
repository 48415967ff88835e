#pragma once

#include <array>
#include <span>

#include <Eigen/Dense>

#include "mcom/model.hpp"

namespace mcom {

using Mat6 = Eigen::Matrix<double, 6, 6>;

// Quadrature ordering of the six-mode fluctuation vector.
enum Quadrature : int { kXa = 0, kYa = 1, kXc = 2, kYc = 3, kQ = 4, kP = 5 };

struct DriftMatrix {
  Mat6 a = Mat6::Zero();
};

struct DiffusionMatrix {
  std::array<double, 6> d{};
  Mat6 dense() const;
};

struct CovarianceMatrix {
  Mat6 v = Mat6::Zero();
};

struct LyapunovSolution {
  CovarianceMatrix cm;
  double residual = 0.0;    // max |A V + V A^T + D| after symmetrization
  double asymmetry = 0.0;   // max |V - V^T| before symmetrization
};

inline constexpr double kDefaultStabilityMargin = 1e-9;

DriftMatrix build_drift(const EffectiveParams& e);
DiffusionMatrix build_diffusion(const EffectiveParams& e);

/// Largest real part over the spectrum of A. Throws EigenFailure.
double max_real_eigenvalue(const DriftMatrix& a);

/// True iff every eigenvalue of A has real part < -margin.
bool is_stable_eigen(const DriftMatrix& a, double margin = kDefaultStabilityMargin);

/// Coefficients {1, c1, ..., c6} of det(lambda I - A), highest power first,
/// by Leverrier-Faddeev recursion.
std::array<double, 7> characteristic_polynomial(const Mat6& a);

struct HurwitzVerdict {
  bool stable = false;
  // A leading minor was indistinguishable from zero relative to the
  // Hadamard bound of its sub-matrix; reported as unstable.
  bool degenerate = false;
  std::array<double, 6> minors{};
};

/// Hurwitz determinants of a degree-6 polynomial given highest power first.
HurwitzVerdict routh_hurwitz(std::span<const double, 7> coeffs);

bool is_stable_rh(const DriftMatrix& a);

/// Steady state of A V + V A^T + D = 0 by Kronecker vectorization. Refuses
/// inputs that fail is_stable_eigen(a, margin) with UnstableSystem.
LyapunovSolution solve_lyapunov(const DriftMatrix& a, const DiffusionMatrix& d,
                                double margin = kDefaultStabilityMargin);

/// max |A V + V A^T + D|.
double lyapunov_residual(const DriftMatrix& a, const DiffusionMatrix& d,
                         const CovarianceMatrix& cm);

/// The three symplectic eigenvalues of a six-mode covariance matrix in
/// ascending order (vacuum = 1/2).
std::array<double, 3> symplectic_spectrum(const CovarianceMatrix& cm);

}  // namespace mcom
