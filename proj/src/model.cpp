#include "mcom/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcom/error.hpp"

namespace mcom {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, what);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }
bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

struct Collective {
  double g_a;
  double g_c;
};

Collective collective(const PhysicalParams& p) {
  return {collective_coupling(p.g_a, p.n_molecules),
          collective_coupling(p.g_c, p.n_molecules)};
}

// Cavity amplitudes that satisfy the first two mean-field equations exactly
// for a given collective displacement beta.
std::pair<cplx, cplx> cavity_amplitudes(const PhysicalParams& p,
                                        const Collective& g, cplx beta) {
  const double s = 2.0 * beta.real();
  const cplx alpha_a = p.drive_a / (kI * (p.delta_a + g.g_a * s) + p.kappa_a);
  const cplx alpha_c =
      (p.drive_c - kI * g.g_c * s) / (kI * p.delta_c + p.kappa_c);
  return {alpha_a, alpha_c};
}

}  // namespace

void PhysicalParams::validate() const {
  require(positive(omega_m), "omega_m must be positive");
  require(positive(kappa_a) && positive(kappa_c),
          "cavity decay rates must be positive");
  require(positive(gamma_m), "gamma_m must be positive");
  require(non_negative(g_a) && non_negative(g_c),
          "couplings must be non-negative");
  require(n_molecules >= 1, "n_molecules must be at least 1");
  require(std::isfinite(delta_a) && std::isfinite(delta_c),
          "detunings must be finite");
  require(non_negative(drive_a) && non_negative(drive_c),
          "drive amplitudes must be non-negative");
  require(non_negative(temperature), "temperature must be non-negative");
  require(!n_th_override || non_negative(*n_th_override),
          "n_th must be non-negative");
  require(positive(mech_frequency_hz), "mech_frequency_hz must be positive");
}

void EffectiveParams::validate() const {
  require(positive(kappa_a) && positive(kappa_c),
          "cavity decay rates must be positive");
  require(positive(gamma_m), "gamma_m must be positive");
  require(positive(omega_m), "omega_m must be positive");
  require(non_negative(g_a_lin) && non_negative(g_c),
          "couplings must be non-negative");
  require(non_negative(n_th), "n_th must be non-negative");
  require(std::isfinite(delta_a_eff) && std::isfinite(delta_c),
          "detunings must be finite");
}

double collective_coupling(double g, std::uint64_t n) {
  return g * std::sqrt(static_cast<double>(n));
}

double thermal_occupation(double omega_rad_per_s, double temperature) {
  if (temperature <= 0.0) return 0.0;
  const double x = kHbar * omega_rad_per_s / (kBoltzmann * temperature);
  return 1.0 / std::expm1(x);
}

double thermal_occupation(const PhysicalParams& p) {
  if (p.n_th_override) return *p.n_th_override;
  return thermal_occupation(2.0 * kPi * p.mech_frequency_hz, p.temperature);
}

double mean_field_residual(const PhysicalParams& p, cplx alpha_a, cplx alpha_c,
                           cplx beta) {
  const Collective g = collective(p);
  const double s = 2.0 * beta.real();
  const cplx r1 = -(kI * p.delta_a + p.kappa_a) * alpha_a -
                  kI * g.g_a * alpha_a * s + p.drive_a;
  const cplx r2 =
      -(kI * p.delta_c + p.kappa_c) * alpha_c - kI * g.g_c * s + p.drive_c;
  const cplx r3 = -(kI * p.omega_m + p.gamma_m) * beta +
                  kI * g.g_a * std::norm(alpha_a) +
                  g.g_c * 2.0 * alpha_c.real();
  return std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
}

SteadyState solve_steady_state_from(const PhysicalParams& p, cplx beta0,
                                    const SteadyStateOptions& opts) {
  p.validate();
  if (!(opts.tol > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "tolerance must be positive");
  }
  if (!(opts.relaxation > 0.0 && opts.relaxation <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "relaxation must be in (0, 1]");
  }
  const Collective g = collective(p);
  const cplx mech = kI * p.omega_m + p.gamma_m;

  SteadyState ss;
  ss.beta = beta0;
  for (std::size_t it = 0;; ++it) {
    auto [alpha_a, alpha_c] = cavity_amplitudes(p, g, ss.beta);
    ss.alpha_a = alpha_a;
    ss.alpha_c = alpha_c;
    ss.iterations = it;
    ss.residual = mean_field_residual(p, alpha_a, alpha_c, ss.beta);
    if (ss.residual <= opts.tol) {
      ss.converged = true;
      return ss;
    }
    if (it >= opts.max_iter || !std::isfinite(ss.residual)) return ss;
    const cplx beta_new =
        (kI * g.g_a * std::norm(alpha_a) + g.g_c * 2.0 * alpha_c.real()) /
        mech;
    ss.beta = (1.0 - opts.relaxation) * ss.beta + opts.relaxation * beta_new;
  }
}

std::vector<SteadyState> find_steady_states(const PhysicalParams& p,
                                            const SteadyStateOptions& opts) {
  std::vector<cplx> starts{cplx{0.0, 0.0}};
  const double g_a = collective_coupling(p.g_a, p.n_molecules);
  if (g_a > 0.0 && p.delta_a != 0.0) {
    starts.emplace_back(-p.delta_a / (2.0 * g_a), 0.0);
  }

  std::vector<SteadyState> found;
  for (cplx start : starts) {
    SteadyState ss = solve_steady_state_from(p, start, opts);
    if (!ss.converged) continue;
    const bool seen = std::any_of(found.begin(), found.end(), [&](auto& o) {
      return std::abs(o.beta - ss.beta) <=
             1e-8 * std::max(1.0, std::abs(ss.beta));
    });
    if (!seen) found.push_back(ss);
  }
  const bool multi = found.size() > 1;
  for (auto& ss : found) ss.multistable = multi;
  return found;
}

SteadyState solve_steady_state(const PhysicalParams& p,
                               const SteadyStateOptions& opts) {
  SteadyState primary = solve_steady_state_from(p, cplx{0.0, 0.0}, opts);
  if (primary.converged) {
    const auto branches = find_steady_states(p, opts);
    primary.multistable = branches.size() > 1;
  }
  return primary;
}

EffectiveParams effective_from_physical(const PhysicalParams& p,
                                        const SteadyState& ss) {
  if (!ss.converged) {
    throw Error(ErrorCode::NonConvergence,
                "mean-field solve did not converge (residual " +
                    std::to_string(ss.residual) + ")");
  }
  const Collective g = collective(p);
  EffectiveParams e;
  e.delta_a_eff = p.delta_a + g.g_a * 2.0 * ss.beta.real();
  e.delta_c = p.delta_c;
  e.g_a_lin = g.g_a * std::abs(ss.alpha_a);
  e.g_c = g.g_c;
  e.kappa_a = p.kappa_a;
  e.kappa_c = p.kappa_c;
  e.gamma_m = p.gamma_m;
  e.omega_m = p.omega_m;
  e.n_th = thermal_occupation(p);
  e.validate();
  return e;
}

EffectiveParams effective_direct(double delta_a_eff, double delta_c,
                                 double g_a_lin, double g_c, double kappa_a,
                                 double kappa_c, double gamma_m, double n_th,
                                 double omega_m) {
  EffectiveParams e{delta_a_eff, delta_c, g_a_lin, g_c,   kappa_a,
                    kappa_c,     gamma_m, omega_m, n_th};
  e.validate();
  return e;
}

}  // namespace mcom
