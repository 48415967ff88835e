#include <doctest.h>

#include <cmath>
#include <random>

#include "mcom/error.hpp"
#include "mcom/measures.hpp"
#include "oracles.hpp"

using namespace mcom;

namespace {

TwoModeCM state(const Mat4& m) { return TwoModeCM::from_matrix(m); }

Mat4 thermal_pair(double n1, double n2) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = n1 + 0.5;
  m(2, 2) = m(3, 3) = n2 + 0.5;
  return m;
}

}  // namespace

TEST_CASE("vacuum") {
  const TwoModeCM t = state(0.5 * Mat4::Identity());
  CHECK(t.inv.i1 == doctest::Approx(0.25));
  CHECK(t.inv.i4 == doctest::Approx(1.0 / 16.0));
  const SymplecticPair nu = symplectic_eigenvalues(t);
  CHECK(nu.minus == doctest::Approx(0.5));
  CHECK(nu.plus == doctest::Approx(0.5));
  CHECK(log_negativity(t) == 0.0);
  CHECK(steering(t, Direction::FirstToSecond) == 0.0);
  CHECK(steering(t, Direction::SecondToFirst) == 0.0);
  CHECK(gaussian_discord(t) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("extraction from the six-mode matrix") {
  CovarianceMatrix v;
  v.v = 0.5 * Mat6::Identity();
  for (Bipartition b : kAllBipartitions) {
    const TwoModeCM t = extract_two_mode(v, b);
    CHECK(t.psi1().isApprox(0.5 * Mat2::Identity()));
    CHECK(t.psi3().isZero());
    CHECK(t.inv.i4 == doctest::Approx(1.0 / 16.0));
  }
  v.v(kXc, kXa) = v.v(kXa, kXc) = 0.1;
  v.v(kQ, kQ) = 2.0;
  const TwoModeCM ca = extract_two_mode(v, Bipartition::CA);
  CHECK(ca.psi3()(0, 0) == 0.1);
  CHECK(extract_two_mode(v, Bipartition::BA).psi1()(0, 0) == 2.0);
  CHECK(ca.inv.i4 == doctest::Approx(ca.full.determinant()).epsilon(1e-14));
}

TEST_CASE("thermal product states") {
  const TwoModeCM t = state(thermal_pair(1.5, 0.25));
  const SymplecticPair nu = symplectic_eigenvalues(t);
  CHECK(nu.minus == doctest::Approx(0.75));
  CHECK(nu.plus == doctest::Approx(2.0));
  CHECK(log_negativity(t) == 0.0);
  CHECK(steering(t, Direction::FirstToSecond) == 0.0);
  CHECK(gaussian_discord(t) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(gaussian_discord(t.swapped()) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("two-mode squeezed vacuum") {
  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    CAPTURE(r);
    const TwoModeCM t = state(oracle::tmsv(r));
    const SymplecticPair nu = symplectic_eigenvalues(t);
    CHECK(std::abs(nu.minus - 0.5) <= 1e-9);
    CHECK(std::abs(nu.plus - 0.5) <= 1e-9);
    CHECK(std::abs(log_negativity(t) - oracle::tmsv_log_negativity(r)) <= 1e-9);
    CHECK(std::abs(steering(t, Direction::FirstToSecond) - oracle::tmsv_steering(r)) <= 1e-9);
    CHECK(std::abs(steering(t, Direction::SecondToFirst) - oracle::tmsv_steering(r)) <= 1e-9);
    CHECK(std::abs(gaussian_discord(t) - oracle::tmsv_discord(r)) <= 1e-9);
  }
  CHECK(oracle::tmsv_discord(1.0) == doctest::Approx(1.62).epsilon(1e-3));
}

TEST_CASE("loss on one arm gives one-way steering") {
  const TwoModeCM t = state(oracle::lossy_second_mode(oracle::tmsv(1.0), 0.3));
  CHECK(steering(t, Direction::FirstToSecond) > 0.1);
  CHECK(steering(t, Direction::SecondToFirst) == 0.0);
  CHECK(log_negativity(t) > 0.0);
}

TEST_CASE("unphysical matrices are rejected") {
  Mat4 m = 0.5 * Mat4::Identity();
  m(0, 0) = m(1, 1) = 0.3;  // below the vacuum
  try {
    symplectic_eigenvalues(state(m));
    FAIL("expected NonPhysicalCM");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPhysicalCM);
  }
  CHECK_THROWS_AS(full_report(state(m)), Error);
  CHECK_THROWS_AS(steering(state(Mat4::Zero()), Direction::FirstToSecond), Error);
}

TEST_CASE("entropy function") {
  CHECK(entropy_f(0.5) == 0.0);
  CHECK(entropy_f(0.5 - 1e-8) == 0.0);
  CHECK_THROWS_AS(entropy_f(0.4), Error);
  CHECK(entropy_f(1.5) == doctest::Approx(2.0 * std::log(2.0)));

  // f'' = -1 / (x^2 - 1/4): increasing and concave on (1/2, inf).
  const double h = 1e-4;
  for (double x = 0.5001 + h; x <= 10.0 - h; x += 0.01) {
    const double second = entropy_f(x + h) - 2.0 * entropy_f(x) + entropy_f(x - h);
    CHECK(second <= 0.0);
    CHECK(entropy_f(x + h) > entropy_f(x));
  }
}

TEST_CASE("closed-form spectra agree with the Hermitian route on mixed states") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const TwoModeCM t = state(oracle::random_state(rng, 3.0, 0.8));
    const SymplecticPair a = symplectic_eigenvalues(t);
    const SymplecticPair b = closed_form::symplectic_eigenvalues(t.inv);
    CHECK(a.plus == doctest::Approx(b.plus).epsilon(1e-7));
    CHECK(a.minus == doctest::Approx(b.minus).epsilon(1e-7));
    CHECK(pt_min_symplectic(t) ==
          doctest::Approx(closed_form::pt_min_symplectic(t.inv)).epsilon(1e-7));
  }
}

TEST_CASE("discord agrees with the invariant formula on mixed states") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const TwoModeCM t = state(oracle::random_state(rng, 3.0, 0.8));
    const SymplecticPair nu = closed_form::symplectic_eigenvalues(t.inv);
    auto closed = [&](const TwoModeInvariants& inv) {
      return entropy_f(std::sqrt(inv.i1)) - entropy_f(nu.minus) - entropy_f(nu.plus) +
             entropy_f(std::sqrt(closed_form::conditional_determinant(inv)));
    };
    TwoModeInvariants swapped = t.inv;
    std::swap(swapped.i1, swapped.i2);
    const CorrelationReport r = full_report(t);
    CHECK(r.discord_12 == doctest::Approx(closed(t.inv)).epsilon(1e-6).scale(1.0));
    CHECK(r.discord_21 == doctest::Approx(closed(swapped)).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("product states carry no discord") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Mat4 v = oracle::random_state(rng);
    Mat4 product = v;
    product.topRightCorner<2, 2>().setZero();
    product.bottomLeftCorner<2, 2>().setZero();
    const CorrelationReport r = full_report(state(product));
    CHECK(std::abs(r.discord_12) <= 1e-9);
    CHECK(std::abs(r.discord_21) <= 1e-9);
    CHECK(r.e_n == 0.0);
  }
}

TEST_CASE("symmetric states steer equally both ways") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    Mat4 v = oracle::random_state(rng);
    v.bottomRightCorner<2, 2>() = v.topLeftCorner<2, 2>();
    v.topRightCorner<2, 2>() *= 0.1;
    v.bottomLeftCorner<2, 2>() = v.topRightCorner<2, 2>().transpose();
    const TwoModeCM t = state(v);
    CHECK(steering(t, Direction::FirstToSecond) == steering(t, Direction::SecondToFirst));
  }
}

TEST_CASE("measures are invariant under local rotations") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int i = 0; i < 300; ++i) {
    const Mat4 v = oracle::random_state(rng);
    const Mat4 s = oracle::local(oracle::rotation(angle(rng)), oracle::rotation(angle(rng)));
    const CorrelationReport a = full_report(state(v));
    const CorrelationReport b = full_report(state(s * v * s.transpose()));
    CHECK(std::abs(a.e_n - b.e_n) <= 1e-9);
    CHECK(std::abs(a.steer_12 - b.steer_12) <= 1e-9);
    CHECK(std::abs(a.steer_21 - b.steer_21) <= 1e-9);
    CHECK(std::abs(a.discord_12 - b.discord_12) <= 1e-9);
    CHECK(std::abs(a.discord_21 - b.discord_21) <= 1e-9);
  }
}

TEST_CASE("measure hierarchy on random states") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const CorrelationReport r = full_report(state(oracle::random_state(rng)));
    if (r.steer_12 > 0.0 || r.steer_21 > 0.0) CHECK(r.e_n > 0.0);
    CHECK((r.e_n > 0.0) == (r.nu_minus_pt < 0.5 - 1e-15));
    CHECK(r.discord_12 >= 0.0);
    CHECK(r.discord_21 >= 0.0);
    if (r.discord_12 > 1.0 || r.discord_21 > 1.0) CHECK(r.e_n > 0.0);
  }
}

TEST_CASE("full report matches the individual measures") {
  std::mt19937_64 rng(9);
  const TwoModeCM t = state(oracle::random_state(rng));
  const CorrelationReport r = full_report(t);
  CHECK(r.e_n == log_negativity(t));
  CHECK(r.steer_12 == steering(t, Direction::FirstToSecond));
  CHECK(r.steer_21 == steering(t, Direction::SecondToFirst));
  CHECK(r.discord_12 == doctest::Approx(gaussian_discord(t)).epsilon(1e-14));
  CHECK(r.discord_21 == doctest::Approx(gaussian_discord(t.swapped())).epsilon(1e-14));
  CHECK(r.nu_minus_pt == pt_min_symplectic(t));
}

TEST_CASE("bipartition names") {
  for (Bipartition b : kAllBipartitions) CHECK(parse_bipartition(to_string(b)) == b);
  CHECK_FALSE(parse_bipartition("AC").has_value());
}
