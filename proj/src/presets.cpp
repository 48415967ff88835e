#include "mcom/presets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

namespace mcom {

namespace {

constexpr double kGammaM = 0.005;
constexpr double kRoomishTemperature = 210.0;

std::string num(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

struct PanelParams {
  double delta_a_eff;
  double delta_c;
  double kappa;
  double g;
};

EffectiveParams base_for(const PanelParams& pp) {
  EffectiveParams e;
  e.delta_a_eff = pp.delta_a_eff;
  e.delta_c = pp.delta_c;
  e.g_a_lin = e.g_c = pp.g;
  e.kappa_a = e.kappa_c = pp.kappa;
  e.gamma_m = kGammaM;
  e.omega_m = 1.0;
  return e;
}

Axis axis(AxisParameter p, double lo, double hi,
          std::size_t steps = kDefaultGridSteps) {
  return Axis{p, lo, hi, steps, AxisScale::Linear};
}

SweepSpec make(std::string name, std::string label, std::string caption,
               Bipartition b, unsigned measures, const EffectiveParams& base) {
  SweepSpec s;
  s.name = std::move(name);
  s.label = std::move(label);
  s.caption = std::move(caption);
  s.bipartitions = {b};
  s.measures = measures;
  s.base = base;
  s.temperature = kRoomishTemperature;
  return s;
}

// Detuning maps: Delta_a_eff in [0, 2] (rows) against Delta_c in [-2, 0].
SweepSpec detuning_map(std::string name, std::string label, Bipartition b,
                       unsigned measures, PanelParams pp) {
  std::string caption = label + " vs (delta_a_eff, delta_c); kappa_j=" +
                        num(pp.kappa) + ", G_j=" +
                        num(pp.g) + ", gamma_m=0.005, T=210 K";
  SweepSpec s = make(std::move(name), std::move(label), std::move(caption), b,
                     measures, base_for(pp));
  s.axis1 = axis(AxisParameter::DeltaAEff, 0.0, 2.0);
  s.axis2 = axis(AxisParameter::DeltaC, -2.0, 0.0);
  return s;
}

// Decay/coupling maps: kappa_j (rows) against G_j at fixed detunings.
SweepSpec decay_coupling_map(std::string name, std::string label,
                             Bipartition b, unsigned measures, double da,
                             double dc) {
  std::string caption = label + " vs (kappa_j, G_j); delta_a_eff=" +
                        num(da) + ", delta_c=" + num(dc) +
                        ", gamma_m=0.005, T=210 K";
  SweepSpec s = make(std::move(name), std::move(label), std::move(caption), b,
                     measures, base_for({da, dc, 0.003, 0.003}));
  s.axis1 = axis(AxisParameter::KappaJoint, 0.001, 0.1);
  s.axis2 = axis(AxisParameter::GJoint, 0.0005, 0.01);
  return s;
}

// Thermal maps: G_j (rows) against T in kelvin with kappa_a = 1,
// kappa_c = 0.0166.
SweepSpec thermal_map(std::string name, std::string label, Bipartition b,
                      double da, double dc) {
  std::string caption = label + " vs (G_j, T); delta_a_eff=" +
                        num(da) + ", delta_c=" + num(dc) +
                        ", kappa_a=1, kappa_c=0.0166, gamma_m=0.005";
  EffectiveParams e = base_for({da, dc, 0.003, 0.003});
  e.kappa_a = 1.0;
  e.kappa_c = 0.0166;
  SweepSpec s = make(std::move(name), std::move(label), std::move(caption), b,
                     kEntanglement, e);
  s.temperature.reset();
  s.axis1 = axis(AxisParameter::GJoint, 0.0005, 0.01);
  s.axis2 = axis(AxisParameter::Temperature, 0.0, 1000.0);
  return s;
}

// One-dimensional cuts reporting every measure.
SweepSpec cut(std::string name, std::string label, Bipartition b, Axis ax,
              PanelParams pp) {
  std::string caption =
      "E, steering and discord for " + label + " vs " +
      std::string(to_string(ax.parameter)) + "; delta_a_eff=" +
      num(pp.delta_a_eff) + ", delta_c=" + num(pp.delta_c) +
      ", kappa_j=" + num(pp.kappa) + ", G_j=" + num(pp.g) +
      ", gamma_m=0.005, T=210 K";
  SweepSpec s = make(std::move(name), std::move(label), std::move(caption), b,
                     kAllMeasures, base_for(pp));
  s.axis1 = ax;
  return s;
}

std::map<std::string, SweepSpec, std::less<>> build_presets() {
  using B = Bipartition;
  const PanelParams cavity_pair{1.0, -1.0, 0.003, 0.003};
  const PanelParams molecular{1.0, -1.0, 0.05, 0.005};

  std::map<std::string, SweepSpec, std::less<>> m;
  auto add = [&](SweepSpec s) { m.emplace(s.name, std::move(s)); };

  add(detuning_map("fig2a", "E_ca", B::CA, kEntanglement, cavity_pair));
  add(detuning_map("fig2b", "E_Ba", B::BA, kEntanglement, molecular));
  add(detuning_map("fig2c", "E_Bc", B::BC, kEntanglement, molecular));
  add(detuning_map("fig3a", "G_c_to_a", B::CA, kSteering, cavity_pair));
  add(detuning_map("fig3b", "G_B_to_a", B::BA, kSteering, molecular));
  add(detuning_map("fig3c", "G_B_to_c", B::BC, kSteering, molecular));
  add(detuning_map("fig4a", "D_ca", B::CA, kDiscord, cavity_pair));
  add(detuning_map("fig4b", "D_Ba", B::BA, kDiscord, molecular));
  add(detuning_map("fig4c", "D_Bc", B::BC, kDiscord, molecular));

  add(decay_coupling_map("fig5a", "E_ca", B::CA, kEntanglement, 1.0, -1.0));
  add(decay_coupling_map("fig5b", "E_Ba", B::BA, kEntanglement, 0.5, -1.0));
  add(decay_coupling_map("fig5c", "E_Bc", B::BC, kEntanglement, 1.0, -1.0));
  add(decay_coupling_map("fig6a", "G_c_to_a", B::CA, kSteering, 1.0, -1.0));
  add(decay_coupling_map("fig6b", "G_B_to_a", B::BA, kSteering, 0.005, -1.0));
  add(decay_coupling_map("fig6c", "G_B_to_c", B::BC, kSteering, 1.0, -1.0));
  add(decay_coupling_map("fig7a", "D_ca", B::CA, kDiscord, 1.0, -1.0));
  add(decay_coupling_map("fig7b", "D_Ba", B::BA, kDiscord, 0.5, -1.0));
  add(decay_coupling_map("fig7c", "D_Bc", B::BC, kDiscord, 1.0, -1.0));

  add(thermal_map("fig8a", "E_ca", B::CA, 1.0, -1.0));
  add(thermal_map("fig8b", "E_Ba", B::BA, 0.005, -1.0));
  add(thermal_map("fig8c", "E_Bc", B::BC, 1.0, -1.0));

  const Axis detuning_cut = axis(AxisParameter::DeltaAEff, 0.0, 2.0);
  add(cut("fig9a", "ca", B::CA, detuning_cut, {1.0, -1.0, 0.003, 0.003}));
  add(cut("fig9b", "Ba", B::BA, detuning_cut, {1.0, -0.5, 0.05, 0.005}));
  add(cut("fig9c", "Bc", B::BC, detuning_cut, {1.0, -1.0, 0.05, 0.005}));

  const Axis coupling_cut = axis(AxisParameter::GJoint, 0.0005, 0.02);
  add(cut("fig10a", "ca", B::CA, coupling_cut, {1.0, -0.99, 0.003, 0.003}));
  add(cut("fig10b", "Ba", B::BA, coupling_cut, {0.5, -0.5, 0.05, 0.005}));
  add(cut("fig10c", "Bc", B::BC, coupling_cut, {1.5, -1.0, 0.05, 0.005}));
  return m;
}

const std::map<std::string, SweepSpec, std::less<>>& presets() {
  static const auto table = build_presets();
  return table;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, spec] : presets()) out.push_back(name);
    // fig10* sorts before fig2* lexicographically; order by figure number.
    std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
      return std::stoi(l.substr(3)) < std::stoi(r.substr(3));
    });
    return out;
  }();
  return names;
}

SweepSpec figure_preset(std::string_view name) {
  const auto& table = presets();
  const auto it = table.find(name);
  if (it == table.end()) {
    throw Error(ErrorCode::UnknownPreset,
                "unknown preset '" + std::string(name) + "'");
  }
  return it->second;
}

PhysicalParams reference_physical_params() {
  constexpr double omega_hz = 30e12;
  PhysicalParams p;
  p.omega_m = 1.0;
  p.kappa_c = 0.5e12 / omega_hz;
  p.kappa_a = 30e12 / omega_hz;
  p.gamma_m = 0.16e12 / omega_hz;
  p.g_c = 0.1e9 / omega_hz;
  p.g_a = 0.08e9 / omega_hz;
  p.n_molecules = 1000000;
  p.delta_a = 1.0;
  p.delta_c = -1.0;
  p.drive_a = 16.0;
  p.drive_c = 16.0;
  p.temperature = kRoomishTemperature;
  p.mech_frequency_hz = omega_hz;
  return p;
}

SweepSpec to_physical(const SweepSpec& spec) {
  SweepSpec s = spec;
  PhysicalParams p = reference_physical_params();
  const double root_n = std::sqrt(static_cast<double>(p.n_molecules));
  p.kappa_a = spec.base.kappa_a;
  p.kappa_c = spec.base.kappa_c;
  p.gamma_m = spec.base.gamma_m;
  p.delta_a = spec.base.delta_a_eff;
  p.delta_c = spec.base.delta_c;
  p.g_a = spec.base.g_a_lin / root_n;
  p.g_c = spec.base.g_c / root_n;
  p.mech_frequency_hz = spec.mech_frequency_hz;
  if (spec.temperature) {
    p.temperature = *spec.temperature;
    p.n_th_override.reset();
  } else {
    p.n_th_override = spec.base.n_th;
  }
  s.physical = true;
  s.physical_base = p;
  return s;
}

void set_grid(SweepSpec& spec, std::size_t n1, std::size_t n2) {
  spec.axis1.steps = n1;
  if (spec.axis2) spec.axis2->steps = n2;
}

}  // namespace mcom
