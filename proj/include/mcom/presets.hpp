#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mcom/sweep.hpp"

namespace mcom {

inline constexpr std::size_t kDefaultGridSteps = 101;

/// Names of every figure preset, fig2a .. fig10c.
const std::vector<std::string>& preset_names();

/// Sweep spec reproducing a figure panel's parameter regime. Throws
/// UnknownPreset.
SweepSpec figure_preset(std::string_view name);

/// Laboratory-frame parameter set used by the steady-state pipeline:
/// omega_m/2pi = 30 THz, kappa_c/2pi = 0.5 THz, kappa_a/2pi = 30 THz,
/// gamma_m/2pi = 0.16 THz, g_c/2pi = 0.1 GHz, g_a/2pi = 0.08 GHz,
/// N = 1e6, E/omega_m = 16, T = 210 K, all scaled by omega_m.
PhysicalParams reference_physical_params();

/// Switches a spec to the steady-state pipeline: the caption's decay rates,
/// detunings (as bare detunings) and collective couplings are carried into
/// reference_physical_params().
SweepSpec to_physical(const SweepSpec& spec);

/// Replaces the step counts of both axes (n2 ignored for 1-D sweeps).
void set_grid(SweepSpec& spec, std::size_t n1, std::size_t n2);

}  // namespace mcom
