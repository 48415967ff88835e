#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace mcom {

// CODATA 2018 exact values.
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K
inline constexpr double kPi = 3.14159265358979323846;

// Vibrational frequency used when converting kelvin to phonon occupation
// (omega_m / 2pi = 30 THz).
inline constexpr double kDefaultMechFrequencyHz = 30e12;

// Laboratory-frame inputs. Rates, couplings, detunings and drives are stored
// in units of omega_m (hbar = 1), so omega_m itself is normally 1. The
// physical frequency mech_frequency_hz is only used for the temperature to
// n_th conversion.
struct PhysicalParams {
  double omega_m = 1.0;
  double kappa_a = 1.0;
  double kappa_c = 1.0;
  double gamma_m = 1.0;
  double g_a = 0.0;  // single-molecule couplings
  double g_c = 0.0;
  std::uint64_t n_molecules = 1;
  double delta_a = 0.0;  // bare detunings
  double delta_c = 0.0;
  double drive_a = 0.0;
  double drive_c = 0.0;
  double temperature = 0.0;  // kelvin
  std::optional<double> n_th_override;
  double mech_frequency_hz = kDefaultMechFrequencyHz;

  void validate() const;
};

// Direct inputs of the six-mode linearized model.
struct EffectiveParams {
  double delta_a_eff = 0.0;
  double delta_c = 0.0;
  double g_a_lin = 0.0;
  double g_c = 0.0;
  double kappa_a = 1.0;
  double kappa_c = 1.0;
  double gamma_m = 1.0;
  double omega_m = 1.0;
  double n_th = 0.0;

  void validate() const;
};

struct SteadyState {
  std::complex<double> alpha_a{};
  std::complex<double> alpha_c{};
  std::complex<double> beta{};
  bool converged = false;
  std::size_t iterations = 0;
  double residual = 0.0;
  // Set when a second start point converged to a distinct branch.
  bool multistable = false;
};

struct SteadyStateOptions {
  double tol = 1e-12;
  std::size_t max_iter = 100000;
  double relaxation = 0.5;
};

/// Collective coupling G = g * sqrt(N) of N identically coupled molecules.
double collective_coupling(double g, std::uint64_t n);

/// Bose-Einstein occupation 1 / (exp(hbar w / kB T) - 1) for an angular
/// frequency in rad/s and a temperature in kelvin. Zero at T = 0.
double thermal_occupation(double omega_rad_per_s, double temperature);

/// n_th for p: the override if present, else from temperature.
double thermal_occupation(const PhysicalParams& p);

/// Largest modulus among the three mean-field equations evaluated at the
/// given amplitudes.
double mean_field_residual(const PhysicalParams& p, std::complex<double> alpha_a,
                           std::complex<double> alpha_c,
                           std::complex<double> beta);

/// Damped fixed-point solve of the mean-field equations starting from
/// beta = beta0. Never throws on non-convergence; check `converged`.
SteadyState solve_steady_state_from(const PhysicalParams& p,
                                    std::complex<double> beta0,
                                    const SteadyStateOptions& opts = {});

/// Solution reached from beta = 0. A second start at -delta_a / (2 G_a) is
/// also tried; if it converges elsewhere `multistable` is set.
SteadyState solve_steady_state(const PhysicalParams& p,
                               const SteadyStateOptions& opts = {});

/// Every distinct converged branch found by the multi-start search.
std::vector<SteadyState> find_steady_states(const PhysicalParams& p,
                                            const SteadyStateOptions& opts = {});

/// Linearized parameters around a converged mean-field solution. Throws
/// ErrorCode::NonConvergence if `ss` did not converge.
EffectiveParams effective_from_physical(const PhysicalParams& p,
                                        const SteadyState& ss);

/// Builds and validates EffectiveParams from caption-style values.
EffectiveParams effective_direct(double delta_a_eff, double delta_c,
                                 double g_a_lin, double g_c, double kappa_a,
                                 double kappa_c, double gamma_m, double n_th,
                                 double omega_m = 1.0);

}  // namespace mcom
