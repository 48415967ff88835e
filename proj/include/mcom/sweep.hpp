#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcom/error.hpp"
#include "mcom/measures.hpp"
#include "mcom/model.hpp"

namespace mcom {

enum class AxisParameter {
  DeltaAEff,
  DeltaC,
  GJoint,      // sets G_a_lin = G_c
  KappaJoint,  // sets kappa_a = kappa_c
  Temperature, // kelvin
  GALin,
  GC,
  KappaA,
  KappaC,
  NTh,
};

enum class AxisScale { Linear, Log };

std::string_view to_string(AxisParameter p);
std::optional<AxisParameter> parse_axis_parameter(std::string_view s);
std::string_view to_string(AxisScale s);
std::optional<AxisScale> parse_axis_scale(std::string_view s);

struct Axis {
  AxisParameter parameter = AxisParameter::DeltaAEff;
  double min = 0.0;
  double max = 1.0;
  std::size_t steps = 2;
  AxisScale scale = AxisScale::Linear;

  void validate() const;  // throws InvalidSpec
  double value(std::size_t i) const;
  std::vector<double> values() const;
};

// Bit set of requested measure families.
enum Measure : unsigned {
  kEntanglement = 1u << 0,
  kSteering = 1u << 1,
  kDiscord = 1u << 2,
  kAllMeasures = kEntanglement | kSteering | kDiscord,
};

std::optional<unsigned> parse_measures(std::string_view comma_list);
std::string measures_to_string(unsigned measures);

struct Tolerances {
  double lyapunov_residual = 1e-10;  // relative to max |D|
  double stability_margin = 1e-9;    // units of omega_m
  double steady_state_tol = 1e-12;
  std::size_t steady_state_max_iter = 100000;
};

struct SweepSpec {
  std::string name = "custom";
  std::string label;    // short figure label, e.g. "E_ca"
  std::string caption;  // one-line description of what is reproduced

  EffectiveParams base;
  // Used when an axis (or `temperature` below) needs kelvin -> n_th.
  double mech_frequency_hz = kDefaultMechFrequencyHz;
  std::optional<double> temperature;  // overrides base.n_th when set

  // Steady-state pipeline: cell parameters are laboratory-frame values and
  // the mean-field solve supplies the effective detuning and coupling.
  bool physical = false;
  PhysicalParams physical_base;

  Axis axis1;
  std::optional<Axis> axis2;
  std::vector<Bipartition> bipartitions{Bipartition::CA};
  unsigned measures = kAllMeasures;
  Tolerances tolerances;

  void validate() const;  // throws InvalidSpec
  std::size_t rows() const { return axis1.steps; }
  std::size_t cols() const { return axis2 ? axis2->steps : 1; }
};

struct SweepCell {
  double x1 = 0.0;
  double x2 = 0.0;
  bool stable = false;
  ErrorCode error = ErrorCode::None;
  std::string message;
  double residual = 0.0;        // absolute Lyapunov residual
  double diffusion_scale = 0.0; // max |D|
  double asymmetry = 0.0;
  // One report per spec bipartition; empty unless stable and error-free.
  std::vector<CorrelationReport> reports;

  bool has_measures() const { return !reports.empty(); }
};

struct SweepResult {
  SweepSpec spec;
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;  // empty for 1-D sweeps
  std::vector<SweepCell> cells;      // row-major, axis1 = rows
  std::string code_version;

  std::size_t rows() const { return axis1_values.size(); }
  std::size_t cols() const {
    return axis2_values.empty() ? 1 : axis2_values.size();
  }
  const SweepCell& at(std::size_t i, std::size_t j) const {
    return cells[i * cols() + j];
  }
};

/// Effective parameters at a grid point (direct mode only).
EffectiveParams resolve_effective(const SweepSpec& spec, double x1, double x2);

/// Laboratory-frame parameters at a grid point (physical mode only).
PhysicalParams resolve_physical(const SweepSpec& spec, double x1, double x2);

/// Evaluates one grid point. Errors are stored in the cell, never thrown.
SweepCell evaluate_cell(const SweepSpec& spec, double x1, double x2);

/// Evaluates the whole grid with `workers` threads. The result does not
/// depend on the worker count. Throws InvalidSpec for malformed specs.
SweepResult run_sweep(const SweepSpec& spec, unsigned workers = 1);

std::string_view version();

}  // namespace mcom
