#include "mcom/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "mcom/lindyn.hpp"

namespace mcom {

namespace {

struct AxisName {
  AxisParameter parameter;
  std::string_view name;
};

constexpr std::array<AxisName, 10> kAxisNames{{
    {AxisParameter::DeltaAEff, "delta_a_eff"},
    {AxisParameter::DeltaC, "delta_c"},
    {AxisParameter::GJoint, "G_joint"},
    {AxisParameter::KappaJoint, "kappa_joint"},
    {AxisParameter::Temperature, "temperature"},
    {AxisParameter::GALin, "G_a_lin"},
    {AxisParameter::GC, "G_c"},
    {AxisParameter::KappaA, "kappa_a"},
    {AxisParameter::KappaC, "kappa_c"},
    {AxisParameter::NTh, "n_th"},
}};

[[noreturn]] void invalid_spec(const std::string& what) {
  throw Error(ErrorCode::InvalidSpec, what);
}

// A NaN temperature means n_th is used as given.
void apply_effective(EffectiveParams& e, double& temperature,
                     AxisParameter p, double x) {
  switch (p) {
    case AxisParameter::DeltaAEff: e.delta_a_eff = x; break;
    case AxisParameter::DeltaC: e.delta_c = x; break;
    case AxisParameter::GJoint: e.g_a_lin = e.g_c = x; break;
    case AxisParameter::KappaJoint: e.kappa_a = e.kappa_c = x; break;
    case AxisParameter::Temperature: temperature = x; break;
    case AxisParameter::GALin: e.g_a_lin = x; break;
    case AxisParameter::GC: e.g_c = x; break;
    case AxisParameter::KappaA: e.kappa_a = x; break;
    case AxisParameter::KappaC: e.kappa_c = x; break;
    case AxisParameter::NTh:
      e.n_th = x;
      temperature = std::numeric_limits<double>::quiet_NaN();
      break;
  }
}

// In physical mode the detuning axes act on bare detunings and the coupling
// axes on collective couplings (g = G / sqrt(N)).
void apply_physical(PhysicalParams& p, AxisParameter a, double x) {
  const double root_n = std::sqrt(static_cast<double>(p.n_molecules));
  switch (a) {
    case AxisParameter::DeltaAEff: p.delta_a = x; break;
    case AxisParameter::DeltaC: p.delta_c = x; break;
    case AxisParameter::GJoint: p.g_a = p.g_c = x / root_n; break;
    case AxisParameter::KappaJoint: p.kappa_a = p.kappa_c = x; break;
    case AxisParameter::Temperature:
      p.temperature = x;
      p.n_th_override.reset();
      break;
    case AxisParameter::GALin: p.g_a = x / root_n; break;
    case AxisParameter::GC: p.g_c = x / root_n; break;
    case AxisParameter::KappaA: p.kappa_a = x; break;
    case AxisParameter::KappaC: p.kappa_c = x; break;
    case AxisParameter::NTh: p.n_th_override = x; break;
  }
}

}  // namespace

std::string_view to_string(AxisParameter p) {
  for (const auto& n : kAxisNames) {
    if (n.parameter == p) return n.name;
  }
  return "?";
}

std::optional<AxisParameter> parse_axis_parameter(std::string_view s) {
  for (const auto& n : kAxisNames) {
    if (n.name == s) return n.parameter;
  }
  return std::nullopt;
}

std::string_view to_string(AxisScale s) {
  return s == AxisScale::Linear ? "linear" : "log";
}

std::optional<AxisScale> parse_axis_scale(std::string_view s) {
  if (s == "linear") return AxisScale::Linear;
  if (s == "log" || s == "logarithmic") return AxisScale::Log;
  return std::nullopt;
}

void Axis::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    invalid_spec("axis " + std::string(to_string(parameter)) +
                 " needs finite min < max");
  }
  if (steps < 2) {
    invalid_spec("axis " + std::string(to_string(parameter)) +
                 " needs at least 2 steps");
  }
  if (scale == AxisScale::Log && !(min > 0.0)) {
    invalid_spec("logarithmic axis needs min > 0");
  }
}

double Axis::value(std::size_t i) const {
  const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
  if (i + 1 == steps) return max;
  if (scale == AxisScale::Log) {
    return std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
  }
  return min + t * (max - min);
}

std::vector<double> Axis::values() const {
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) out[i] = value(i);
  return out;
}

std::optional<unsigned> parse_measures(std::string_view list) {
  unsigned out = 0;
  std::string item;
  std::istringstream in{std::string(list)};
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item == "entanglement") out |= kEntanglement;
    else if (item == "steering_both" || item == "steering") out |= kSteering;
    else if (item == "discord_both" || item == "discord") out |= kDiscord;
    else if (item == "all") out |= kAllMeasures;
    else if (!item.empty()) return std::nullopt;
  }
  if (out == 0) return std::nullopt;
  return out;
}

std::string measures_to_string(unsigned measures) {
  std::string out;
  auto add = [&](unsigned bit, const char* name) {
    if (!(measures & bit)) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(kEntanglement, "entanglement");
  add(kSteering, "steering_both");
  add(kDiscord, "discord_both");
  return out;
}

void SweepSpec::validate() const {
  axis1.validate();
  if (axis2) {
    axis2->validate();
    if (axis2->parameter == axis1.parameter) {
      invalid_spec("axis parameters must be distinct");
    }
  }
  if (bipartitions.empty()) invalid_spec("no bipartitions requested");
  if ((measures & kAllMeasures) == 0) invalid_spec("no measures requested");
  if (!(mech_frequency_hz > 0.0)) invalid_spec("mech_frequency_hz must be > 0");
  try {
    if (physical) {
      physical_base.validate();
    } else {
      base.validate();
    }
  } catch (const Error& e) {
    invalid_spec(std::string("base parameters: ") + e.what());
  }
  if (temperature && !(*temperature >= 0.0)) {
    invalid_spec("temperature must be non-negative");
  }
}

EffectiveParams resolve_effective(const SweepSpec& spec, double x1, double x2) {
  EffectiveParams e = spec.base;
  double temperature = spec.temperature.value_or(std::numeric_limits<double>::quiet_NaN());
  apply_effective(e, temperature, spec.axis1.parameter, x1);
  if (spec.axis2) apply_effective(e, temperature, spec.axis2->parameter, x2);
  if (!std::isnan(temperature)) {
    e.n_th = thermal_occupation(2.0 * kPi * spec.mech_frequency_hz, temperature);
  }
  e.validate();
  return e;
}

PhysicalParams resolve_physical(const SweepSpec& spec, double x1, double x2) {
  PhysicalParams p = spec.physical_base;
  apply_physical(p, spec.axis1.parameter, x1);
  if (spec.axis2) apply_physical(p, spec.axis2->parameter, x2);
  p.validate();
  return p;
}

SweepCell evaluate_cell(const SweepSpec& spec, double x1, double x2) {
  SweepCell cell;
  cell.x1 = x1;
  cell.x2 = x2;
  try {
    EffectiveParams e;
    if (spec.physical) {
      const PhysicalParams p = resolve_physical(spec, x1, x2);
      SteadyStateOptions opts;
      opts.tol = spec.tolerances.steady_state_tol;
      opts.max_iter = spec.tolerances.steady_state_max_iter;
      e = effective_from_physical(p, solve_steady_state(p, opts));
    } else {
      e = resolve_effective(spec, x1, x2);
    }

    const DriftMatrix a = build_drift(e);
    const DiffusionMatrix d = build_diffusion(e);
    cell.stable = is_stable_eigen(a, spec.tolerances.stability_margin);
    if (!cell.stable) return cell;

    const LyapunovSolution sol =
        solve_lyapunov(a, d, spec.tolerances.stability_margin);
    cell.residual = sol.residual;
    cell.asymmetry = sol.asymmetry;
    cell.diffusion_scale = *std::max_element(d.d.begin(), d.d.end());
    if (sol.residual > spec.tolerances.lyapunov_residual * cell.diffusion_scale) {
      throw Error(ErrorCode::LyapunovResidual, "Lyapunov residual above tolerance");
    }

    std::vector<CorrelationReport> reports;
    reports.reserve(spec.bipartitions.size());
    for (Bipartition b : spec.bipartitions) {
      reports.push_back(full_report(sol.cm, b));
    }
    cell.reports = std::move(reports);
  } catch (const Error& err) {
    cell.error = err.code();
    cell.message = err.what();
    cell.reports.clear();
  } catch (const std::exception& err) {
    cell.error = ErrorCode::InvalidParameter;
    cell.message = err.what();
    cell.reports.clear();
  }
  return cell;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned workers) {
  spec.validate();
  SweepResult result;
  result.spec = spec;
  result.code_version = std::string(version());
  result.axis1_values = spec.axis1.values();
  if (spec.axis2) result.axis2_values = spec.axis2->values();

  const std::size_t rows = result.rows();
  const std::size_t cols = result.cols();
  result.cells.resize(rows * cols);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next.fetch_add(1); k < rows * cols;
         k = next.fetch_add(1)) {
      const std::size_t i = k / cols;
      const std::size_t j = k % cols;
      const double x2 = result.axis2_values.empty() ? 0.0 : result.axis2_values[j];
      result.cells[k] = evaluate_cell(spec, result.axis1_values[i], x2);
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(
                                      workers, static_cast<unsigned>(rows * cols)));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  }
  return result;
}

std::string_view version() {
#ifdef MCOM_VERSION_STRING
  return MCOM_VERSION_STRING;
#else
  return "unknown";
#endif
}

}  // namespace mcom
