#include <doctest.h>

#include <algorithm>
#include <random>

#include "mcom/error.hpp"
#include "mcom/lindyn.hpp"
#include "random_params.hpp"

using namespace mcom;

namespace {

EffectiveParams fig2a_point() {
  return effective_direct(1.0, -1.0, 0.003, 0.003, 0.003, 0.003, 0.005, 0.0);
}

}  // namespace

TEST_CASE("drift matrix layout") {
  const EffectiveParams e = fig2a_point();
  const Mat6 a = build_drift(e).a;
  CHECK(a(kYa, kQ) == doctest::Approx(-0.006));
  CHECK(a(kYc, kQ) == doctest::Approx(-0.006));
  CHECK(a(kP, kXa) == doctest::Approx(-0.006));
  CHECK(a(kP, kXc) == doctest::Approx(-0.006));
  CHECK(a(kXa, kYa) == 1.0);
  CHECK(a(kYa, kXa) == -1.0);
  CHECK(a(kXc, kYc) == -1.0);
  CHECK(a(kQ, kP) == 1.0);
  CHECK(a(kP, kQ) == -1.0);
  CHECK(a.trace() == doctest::Approx(-2.0 * (0.003 + 0.003 + 0.005)));

  SUBCASE("decoupled limit is block diagonal") {
    EffectiveParams d = e;
    d.g_a_lin = d.g_c = 0.0;
    const Mat6 b = build_drift(d).a;
    CHECK(b.block<2, 4>(0, 2).isZero());
    CHECK(b.block<2, 2>(2, 0).isZero());
    CHECK(b.block<2, 2>(2, 4).isZero());
    CHECK(b.block<2, 4>(4, 0).isZero());
  }
}

TEST_CASE("diffusion matrix") {
  EffectiveParams e = fig2a_point();
  e.kappa_a = 1.0;
  e.n_th = 0.31;
  const DiffusionMatrix d = build_diffusion(e);
  CHECK(d.d[kXa] == 1.0);
  CHECK(d.d[kYa] == 1.0);
  CHECK(d.d[kXc] == 0.003);
  CHECK(d.d[kQ] == doctest::Approx(0.005 * 1.62));
  CHECK(d.d[kP] == doctest::Approx(0.005 * 1.62));
  e.n_th = 0.0;
  CHECK(build_diffusion(e).d[kP] == doctest::Approx(0.005));
}

TEST_CASE("stability verdicts on simple matrices") {
  DriftMatrix a;
  a.a = -Mat6::Identity();
  CHECK(is_stable_eigen(a));
  CHECK(is_stable_rh(a));
  CHECK(max_real_eigenvalue(a) == doctest::Approx(-1.0));

  a.a(5, 5) = 0.01;
  CHECK_FALSE(is_stable_eigen(a));
  CHECK_FALSE(is_stable_rh(a));

  SUBCASE("characteristic polynomial of -I is (s + 1)^6") {
    const auto c = characteristic_polynomial(-Mat6::Identity());
    const std::array<double, 7> binom{1, 6, 15, 20, 15, 6, 1};
    for (int k = 0; k < 7; ++k) CHECK(c[k] == doctest::Approx(binom[k]));
  }

  SUBCASE("a root on the imaginary axis is degenerate") {
    DriftMatrix m;
    m.a = -Mat6::Identity();
    m.a(4, 4) = m.a(5, 5) = 0.0;
    m.a(4, 5) = 1.0;
    m.a(5, 4) = -1.0;
    const auto v = routh_hurwitz(characteristic_polynomial(m.a));
    CHECK_FALSE(v.stable);
    CHECK(v.degenerate);
  }
}

TEST_CASE("Routh-Hurwitz agrees with the spectrum on random drift matrices") {
  std::mt19937_64 rng(20240611);
  int stable = 0, unstable = 0, disagreements = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const DriftMatrix a = build_drift(fixture::random_effective(rng));
    const double lead = max_real_eigenvalue(a);
    const HurwitzVerdict rh = routh_hurwitz(characteristic_polynomial(a.a));
    if (std::abs(lead) <= 1e-8) continue;
    (lead < 0.0 ? stable : unstable)++;
    if (rh.stable != (lead < 0.0)) ++disagreements;
  }
  CHECK(disagreements == 0);
  CHECK(stable > 200);
  CHECK(unstable > 200);
}

TEST_CASE("blue-detuned cavity crosses into instability on a (G_c, kappa) grid") {
  int stable = 0, unstable = 0;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double g = 0.002 + 0.3 * i / 49.0;
      const double kappa = 0.01 + 1.0 * j / 49.0;
      const DriftMatrix a =
          build_drift(effective_direct(1.0, -1.0, 0.003, g, 0.003, kappa, 0.005, 0.0));
      const double lead = max_real_eigenvalue(a);
      if (std::abs(lead) <= 1e-8) continue;
      const bool eig = is_stable_eigen(a, 1e-8);
      (eig ? stable : unstable)++;
      CHECK(is_stable_rh(a) == eig);
    }
  }
  CHECK(stable > 0);
  CHECK(unstable > 0);
}

TEST_CASE("Lyapunov solution") {
  SUBCASE("isotropic damping gives the vacuum") {
    DriftMatrix a;
    a.a = -0.7 * Mat6::Identity();
    DiffusionMatrix d;
    d.d.fill(0.7);
    const LyapunovSolution s = solve_lyapunov(a, d);
    CHECK((s.cm.v - 0.5 * Mat6::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
  }

  SUBCASE("decoupled thermal mechanics") {
    EffectiveParams e = fig2a_point();
    e.g_a_lin = e.g_c = 0.0;
    e.n_th = 2.5;
    const LyapunovSolution s = solve_lyapunov(build_drift(e), build_diffusion(e));
    CHECK(s.cm.v(kQ, kQ) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s.cm.v(kP, kP) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(s.cm.v(kQ, kP)) <= 1e-12);
    CHECK(s.cm.v(kXa, kXa) == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("coupled caption point") {
    const EffectiveParams e = fig2a_point();
    const DriftMatrix a = build_drift(e);
    const DiffusionMatrix d = build_diffusion(e);
    const LyapunovSolution s = solve_lyapunov(a, d);
    CHECK(s.residual <= 1e-10);
    CHECK(lyapunov_residual(a, d, s.cm) == s.residual);
    CHECK((s.cm.v - s.cm.v.transpose()).isZero(0.0));
    const auto nu = symplectic_spectrum(s.cm);
    CHECK(nu[0] >= 0.5 - 1e-9);
  }

  SUBCASE("unstable drift is refused") {
    EffectiveParams e = fig2a_point();
    e.delta_a_eff = -1.0;
    e.g_a_lin = e.g_c = 0.2;
    const DriftMatrix a = build_drift(e);
    REQUIRE_FALSE(is_stable_eigen(a));
    try {
      solve_lyapunov(a, build_diffusion(e));
      FAIL("expected UnstableSystem");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::UnstableSystem);
    }
  }
}

TEST_CASE("Lyapunov solution is covariant under mode permutations") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const EffectiveParams e = fixture::random_effective(rng);
    const DriftMatrix a = build_drift(e);
    if (!is_stable_eigen(a, 1e-6)) continue;
    const DiffusionMatrix d = build_diffusion(e);
    const Mat6 v = solve_lyapunov(a, d).cm.v;

    // Reorder the modes as (Q, P, X_a, Y_a, X_c, Y_c).
    Eigen::PermutationMatrix<6> perm;
    perm.indices() << 2, 3, 4, 5, 0, 1;
    DriftMatrix pa;
    pa.a = perm * a.a * perm.transpose();
    const Mat6 pd = perm * d.dense() * perm.transpose();
    DiffusionMatrix pdd;
    for (int i = 0; i < 6; ++i) pdd.d[i] = pd(i, i);
    const Mat6 pv = solve_lyapunov(pa, pdd).cm.v;
    const Mat6 back = perm.transpose() * pv * perm;
    CHECK((back - v).cwiseAbs().maxCoeff() <= 1e-9 * v.cwiseAbs().maxCoeff());
  }
}
