#include "mcom/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcom/error.hpp"
#include "symplectic.hpp"

namespace mcom {

namespace {

constexpr double kClampTol = 1e-9;

[[noreturn]] void non_physical(const std::string& what) {
  throw Error(ErrorCode::NonPhysicalCM, what);
}

double determinant_pd(const Mat4& m) {
  const Eigen::LLT<Mat4> llt(m);
  if (llt.info() == Eigen::Success) {
    const double d = llt.matrixL().toDenseMatrix().diagonal().prod();
    return d * d;
  }
  return m.partialPivLu().determinant();
}

// Largest symplectic eigenvalue of m, then the smallest from
// nu- nu+ = sqrt(det m), which keeps relative precision for both.
SymplecticPair spectrum_of(const Mat4& m, double det) {
  if (!(det > 0.0)) non_physical("two-mode covariance matrix is singular");
  const auto sq = detail::squared_symplectic_spectrum<4>(m);
  const double plus = std::sqrt(sq[1]);
  return {std::sqrt(det) / plus, plus};
}

void check_uncertainty(const TwoModeInvariants& inv, double nu_minus) {
  const double sigma = inv.i1 + inv.i2 + 2.0 * inv.i3;
  if (sigma * sigma < 4.0 * inv.i4 - 1e-12) {
    non_physical("Sigma^2 < 4 det V: not a Gaussian state");
  }
  if (nu_minus < 0.5 - 1e-6) {
    non_physical("symplectic eigenvalue " + std::to_string(nu_minus) +
                 " below 1/2");
  }
}

SymplecticPair checked_spectrum(const TwoModeCM& t) {
  const SymplecticPair s = spectrum_of(t.full, t.inv.i4);
  check_uncertainty(t.inv, s.minus);
  return s;
}

double pt_min_unchecked(const TwoModeCM& t) {
  // Partial transposition flips the momentum of the second mode.
  const Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  const Mat4 pt = flip.asDiagonal() * t.full * flip.asDiagonal();
  return spectrum_of(pt, t.inv.i4).minus;
}

double log_negativity_from(double gamma) {
  return std::max(0.0, -std::log(2.0 * gamma));
}

double steering_from(const TwoModeInvariants& inv, Direction dir) {
  if (inv.i4 <= 1e-30) {
    throw Error(ErrorCode::DegenerateDeterminant,
                "det V_sub too small for steering");
  }
  const double local = dir == Direction::FirstToSecond ? inv.i1 : inv.i2;
  return std::max(0.0, 0.5 * std::log(local / (4.0 * inv.i4)));
}

// Local symplectic standard form: Psi1 = a I, Psi2 = b I, Psi3 = diag(c1, c2)
// with c1^2 >= c2^2.
struct StandardForm {
  double a = 0.0;
  double b = 0.0;
  double c1sq = 0.0;
  double c2sq = 0.0;
};

// (m / scale)^(-1/2); symplectic when det m = scale^2.
Mat2 inverse_sqrt(const Mat2& m, double scale) {
  const Eigen::SelfAdjointEigenSolver<Mat2> es(m / scale);
  return es.eigenvectors() *
         es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

StandardForm standard_form(const TwoModeCM& t) {
  StandardForm f;
  f.a = std::sqrt(t.inv.i1);
  f.b = std::sqrt(t.inv.i2);
  const Mat2 k = inverse_sqrt(t.psi1(), f.a) * t.psi3() * inverse_sqrt(t.psi2(), f.b);
  const Eigen::Vector2d s = Eigen::JacobiSVD<Mat2>(k).singularValues();
  f.c1sq = s(0) * s(0);
  f.c2sq = s(1) * s(1);
  return f;
}

StandardForm swap_modes(StandardForm f) {
  std::swap(f.a, f.b);
  return f;
}

// Minimum conditional determinant over Gaussian measurements on the first
// mode. The invariant expressions are evaluated in factored standard-form
// terms: near pure states the unfactored radicands cancel to O(eps a^4).
double conditional_w(const StandardForm& f) {
  const double a = f.a, b = f.b;
  const double d_min = a * b - f.c1sq;
  const double d_max = a * b - f.c2sq;
  const double c1c2 = std::sqrt(f.c1sq * f.c2sq);
  // Branch test 4(I1 I2 - I4)^2 <= (I2 + 4 I4)(1 + 4 I1) I3^2, factored.
  const double g1 = 4.0 * a * f.c1sq * d_max - b * f.c2sq;
  const double g2 = 4.0 * a * f.c2sq * d_min - b * f.c1sq;
  if (c1c2 > 1e-15 && g1 * g2 >= 0.0) {
    const double inner = std::max(0.0, (4.0 * a * d_min - b) * (4.0 * a * d_max - b));
    const double w = (2.0 * c1c2 + std::sqrt(inner)) / (4.0 * a * a - 1.0);
    return w * w;
  }
  return b * d_min / a;
}

double clamp_measure(double value, const char* name) {
  if (value >= 0.0) return value;
  if (value > -kClampTol) return 0.0;
  non_physical(std::string(name) + " is negative (" + std::to_string(value) + ")");
}

double discord_from(const StandardForm& form, const SymplecticPair& nu) {
  const double w = conditional_w(form);
  const double d = entropy_f(form.a) - entropy_f(nu.minus) -
                   entropy_f(nu.plus) + entropy_f(std::sqrt(w));
  return clamp_measure(d, "Gaussian discord");
}

TwoModeInvariants swap_invariants(TwoModeInvariants inv) {
  std::swap(inv.i1, inv.i2);
  return inv;
}

}  // namespace

ModeIndices mode_indices(Bipartition b) {
  switch (b) {
    case Bipartition::CA: return {kXc, kXa};
    case Bipartition::BA: return {kQ, kXa};
    case Bipartition::BC: return {kQ, kXc};
  }
  throw Error(ErrorCode::InvalidParameter, "unknown bipartition");
}

std::string_view to_string(Bipartition b) {
  switch (b) {
    case Bipartition::CA: return "CA";
    case Bipartition::BA: return "BA";
    case Bipartition::BC: return "BC";
  }
  return "?";
}

std::optional<Bipartition> parse_bipartition(std::string_view s) {
  for (Bipartition b : kAllBipartitions) {
    if (to_string(b) == s) return b;
  }
  return std::nullopt;
}

TwoModeCM TwoModeCM::from_matrix(const Mat4& m) {
  TwoModeCM t;
  t.full = m;
  t.inv.i1 = t.psi1().determinant();
  t.inv.i2 = t.psi2().determinant();
  t.inv.i3 = t.psi3().determinant();
  t.inv.i4 = determinant_pd(m);
  return t;
}

TwoModeCM TwoModeCM::swapped() const {
  Mat4 m;
  m << psi2(), psi3().transpose(), psi3(), psi1();
  TwoModeCM t;
  t.full = m;
  t.inv = swap_invariants(inv);
  return t;
}

TwoModeCM extract_two_mode(const CovarianceMatrix& v, Bipartition b) {
  const ModeIndices idx = mode_indices(b);
  const std::array<int, 4> rows{idx.first, idx.first + 1, idx.second,
                                idx.second + 1};
  Mat4 m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = v.v(rows[i], rows[j]);
  }
  return TwoModeCM::from_matrix(m);
}

SymplecticPair symplectic_eigenvalues(const TwoModeCM& t) {
  return checked_spectrum(t);
}

double pt_min_symplectic(const TwoModeCM& t) {
  checked_spectrum(t);
  return pt_min_unchecked(t);
}

double log_negativity(const TwoModeCM& t) {
  return log_negativity_from(pt_min_symplectic(t));
}

double steering(const TwoModeCM& t, Direction dir) {
  checked_spectrum(t);
  return steering_from(t.inv, dir);
}

double entropy_f(double x) {
  if (!(x >= 0.5 - 1e-6)) {
    throw Error(ErrorCode::DomainError,
                "entropy function needs x >= 1/2, got " + std::to_string(x));
  }
  x = std::max(x, 0.5);
  const double up = x + 0.5;
  const double down = x - 0.5;
  const double lower = down > 0.0 ? down * std::log(down) : 0.0;
  return up * std::log(up) - lower;
}

double gaussian_discord(const TwoModeCM& t) {
  const SymplecticPair nu = checked_spectrum(t);
  return discord_from(standard_form(t), nu);
}

CorrelationReport full_report(const TwoModeCM& t) {
  const SymplecticPair nu = checked_spectrum(t);
  CorrelationReport r;
  r.nu_minus_pt = pt_min_unchecked(t);
  r.e_n = log_negativity_from(r.nu_minus_pt);
  r.steer_12 = steering_from(t.inv, Direction::FirstToSecond);
  r.steer_21 = steering_from(t.inv, Direction::SecondToFirst);
  const StandardForm form = standard_form(t);
  r.discord_12 = discord_from(form, nu);
  r.discord_21 = discord_from(swap_modes(form), nu);
  r.stable = true;

  if ((r.steer_12 > kClampTol || r.steer_21 > kClampTol) && !(r.e_n > kClampTol)) {
    non_physical("steerable state without log-negativity");
  }
  return r;
}

CorrelationReport full_report(const CovarianceMatrix& v, Bipartition b) {
  return full_report(extract_two_mode(v, b));
}

namespace closed_form {

SymplecticPair symplectic_eigenvalues(const TwoModeInvariants& inv) {
  const double sigma = inv.i1 + inv.i2 + 2.0 * inv.i3;
  const double disc = sigma * sigma - 4.0 * inv.i4;
  if (disc < -1e-12) non_physical("Sigma^2 < 4 det V: not a Gaussian state");
  const double root = std::sqrt(std::max(0.0, disc));
  return {std::sqrt((sigma - root) / 2.0), std::sqrt((sigma + root) / 2.0)};
}

double pt_min_symplectic(const TwoModeInvariants& inv) {
  const double sigma = inv.i1 + inv.i2 - 2.0 * inv.i3;
  const double disc = std::max(0.0, sigma * sigma - 4.0 * inv.i4);
  return std::sqrt(sigma - std::sqrt(disc)) / std::sqrt(2.0);
}

double conditional_determinant(const TwoModeInvariants& inv) {
  const double i1 = inv.i1, i2 = inv.i2, i3 = inv.i3, i4 = inv.i4;
  const double i3sq = i3 * i3;
  bool first_branch = false;
  if (i3sq > 1e-30) {
    const double num = 4.0 * (i1 * i2 - i4) * (i1 * i2 - i4);
    const double den = (i2 + 4.0 * i4) * (1.0 + 4.0 * i1) * i3sq;
    first_branch = num / den <= 1.0;
  }
  if (first_branch) {
    const double inner =
        std::max(0.0, 4.0 * i3sq + (4.0 * i1 - 1.0) * (4.0 * i4 - i2));
    const double w = (2.0 * std::abs(i3) + std::sqrt(inner)) / (4.0 * i1 - 1.0);
    return w * w;
  }
  // (X - sqrt(X^2 - 4 I1 I2 I4)) / (2 I1) with X = I1 I2 + I4 - I3^2, using
  // the expanded discriminant and the conjugate root to avoid cancellation.
  const double x = i1 * i2 + i4 - i3sq;
  const double disc = std::max(
      0.0, (i1 * i2 - i4) * (i1 * i2 - i4) + i3sq * i3sq - 2.0 * i3sq * (i1 * i2 + i4));
  return 2.0 * i2 * i4 / (x + std::sqrt(disc));
}

}  // namespace closed_form

}  // namespace mcom
