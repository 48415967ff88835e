#pragma once

#include <array>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "mcom/lindyn.hpp"

namespace mcom {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

// Ordered pairs of modes. The first mode supplies Psi1 and is the steering
// party of steer_12 and the measured party of discord_12.
enum class Bipartition { CA, BA, BC };

inline constexpr std::array<Bipartition, 3> kAllBipartitions{
    Bipartition::CA, Bipartition::BA, Bipartition::BC};

struct ModeIndices {
  int first;   // quadrature index of the first mode's X
  int second;  // quadrature index of the second mode's X
};

ModeIndices mode_indices(Bipartition b);
std::string_view to_string(Bipartition b);
std::optional<Bipartition> parse_bipartition(std::string_view s);

// Symplectic invariants of a two-mode covariance matrix.
struct TwoModeInvariants {
  double i1 = 0.0;  // det Psi1
  double i2 = 0.0;  // det Psi2
  double i3 = 0.0;  // det Psi3
  double i4 = 0.0;  // det V_sub
};

struct TwoModeCM {
  Mat4 full = Mat4::Zero();
  TwoModeInvariants inv;

  Mat2 psi1() const { return full.topLeftCorner<2, 2>(); }
  Mat2 psi2() const { return full.bottomRightCorner<2, 2>(); }
  Mat2 psi3() const { return full.topRightCorner<2, 2>(); }

  /// Builds from a symmetric 4x4 block and computes the invariants.
  static TwoModeCM from_matrix(const Mat4& m);
  /// Same state with the two modes exchanged.
  TwoModeCM swapped() const;
};

struct SymplecticPair {
  double minus = 0.0;
  double plus = 0.0;
};

enum class Direction { FirstToSecond, SecondToFirst };

struct CorrelationReport {
  double e_n = 0.0;
  double steer_12 = 0.0;
  double steer_21 = 0.0;
  double discord_12 = 0.0;
  double discord_21 = 0.0;
  double nu_minus_pt = 0.5;
  bool stable = true;
};

TwoModeCM extract_two_mode(const CovarianceMatrix& v, Bipartition b);

/// (nu-, nu+) of the two-mode state. Throws NonPhysicalCM for states that
/// violate the uncertainty principle.
SymplecticPair symplectic_eigenvalues(const TwoModeCM& t);

/// Smallest symplectic eigenvalue of the partially transposed state.
double pt_min_symplectic(const TwoModeCM& t);

double log_negativity(const TwoModeCM& t);
double steering(const TwoModeCM& t, Direction dir);

/// (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), with f(1/2) = 0.
double entropy_f(double x);

/// Gaussian discord with the first mode as the measured party. Use
/// t.swapped() for the other order.
double gaussian_discord(const TwoModeCM& t);

CorrelationReport full_report(const TwoModeCM& t);
CorrelationReport full_report(const CovarianceMatrix& v, Bipartition b);

// Invariant-based expressions. They agree with the routines above but lose
// precision near degenerate spectra (e.g. pure states), where the
// discriminants cancel.
namespace closed_form {
SymplecticPair symplectic_eigenvalues(const TwoModeInvariants& inv);
double pt_min_symplectic(const TwoModeInvariants& inv);
/// Minimum conditional determinant W entering the discord, first mode
/// measured.
double conditional_determinant(const TwoModeInvariants& inv);
}  // namespace closed_form

}  // namespace mcom
