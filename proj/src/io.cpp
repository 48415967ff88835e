#include "mcom/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace mcom {

namespace {

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::ConfigParse, what);
}

std::optional<double> parse_optional(const std::string& field) {
  if (field.empty()) return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    parse_error("bad number '" + field + "'");
  }
  if (used != field.size()) parse_error("bad number '" + field + "'");
  return v;
}

void write_optional(std::ostream& out, std::optional<double> v) {
  if (v) out << format_double(*v);
}

std::string axis_line(const Axis& a) {
  return "parameter=" + std::string(to_string(a.parameter)) +
         " min=" + format_double(a.min) + " max=" + format_double(a.max) +
         " steps=" + std::to_string(a.steps) +
         " scale=" + std::string(to_string(a.scale));
}

bool wanted(unsigned measures, Field f) {
  switch (f) {
    case Field::EN:
    case Field::NuMinusPT: return measures & kEntanglement;
    case Field::Steer12:
    case Field::Steer21: return measures & kSteering;
    case Field::Discord12:
    case Field::Discord21: return measures & kDiscord;
  }
  return false;
}

constexpr std::array<Field, 6> kAllFields{Field::EN,        Field::Steer12,
                                          Field::Steer21,   Field::Discord12,
                                          Field::Discord21, Field::NuMinusPT};

}  // namespace

std::optional<unsigned> parse_formats(std::string_view list) {
  unsigned out = 0;
  for (const auto& raw : split(std::string(list), ',')) {
    const std::string item = trim(raw);
    if (item == "csv") out |= kCsv;
    else if (item == "matrix") out |= kMatrix;
    else if (!item.empty()) return std::nullopt;
  }
  if (out == 0) return std::nullopt;
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string provenance_header(const SweepResult& r) {
  const SweepSpec& s = r.spec;
  std::ostringstream h;
  h << "# mcom format " << kFormatVersion << "\n";
  h << "# code_version: " << r.code_version << "\n";
  h << "# preset: " << s.name << "\n";
  if (!s.label.empty()) h << "# label: " << s.label << "\n";
  if (!s.caption.empty()) h << "# caption: " << s.caption << "\n";
  h << "# mode: " << (s.physical ? "physical" : "effective") << "\n";
  if (s.physical) {
    const PhysicalParams& p = s.physical_base;
    h << "# physical: omega_m=" << format_double(p.omega_m)
      << " kappa_a=" << format_double(p.kappa_a)
      << " kappa_c=" << format_double(p.kappa_c)
      << " gamma_m=" << format_double(p.gamma_m)
      << " g_a=" << format_double(p.g_a) << " g_c=" << format_double(p.g_c)
      << " n_molecules=" << p.n_molecules
      << " delta_a=" << format_double(p.delta_a)
      << " delta_c=" << format_double(p.delta_c)
      << " drive_a=" << format_double(p.drive_a)
      << " drive_c=" << format_double(p.drive_c)
      << " temperature=" << format_double(p.temperature);
    if (p.n_th_override) h << " n_th=" << format_double(*p.n_th_override);
    h << " mech_frequency_hz=" << format_double(p.mech_frequency_hz) << "\n";
  } else {
    const EffectiveParams& e = s.base;
    h << "# base: delta_a_eff=" << format_double(e.delta_a_eff)
      << " delta_c=" << format_double(e.delta_c)
      << " G_a_lin=" << format_double(e.g_a_lin)
      << " G_c=" << format_double(e.g_c)
      << " kappa_a=" << format_double(e.kappa_a)
      << " kappa_c=" << format_double(e.kappa_c)
      << " gamma_m=" << format_double(e.gamma_m)
      << " omega_m=" << format_double(e.omega_m)
      << " n_th=" << format_double(e.n_th) << "\n";
    if (s.temperature) {
      h << "# temperature: " << format_double(*s.temperature) << " K\n";
    }
    h << "# mech_frequency_hz: " << format_double(s.mech_frequency_hz) << "\n";
  }
  h << "# axis1: " << axis_line(s.axis1) << "\n";
  if (s.axis2) h << "# axis2: " << axis_line(*s.axis2) << "\n";
  h << "# bipartitions:";
  for (Bipartition b : s.bipartitions) h << " " << to_string(b);
  h << "\n# measures: " << measures_to_string(s.measures) << "\n";
  const Tolerances& t = s.tolerances;
  h << "# tolerances: lyapunov_residual=" << format_double(t.lyapunov_residual)
    << " stability_margin=" << format_double(t.stability_margin)
    << " steady_state_tol=" << format_double(t.steady_state_tol)
    << " steady_state_max_iter=" << t.steady_state_max_iter << "\n";
  h << "# unstable or failed cells: empty CSV fields, nan in matrices\n";
  return h.str();
}

void write_csv(const SweepResult& r, std::ostream& out) {
  out << provenance_header(r);
  out << kCsvHeader << "\n";
  const bool two_d = !r.axis2_values.empty();
  const unsigned m = r.spec.measures;
  for (const SweepCell& c : r.cells) {
    for (std::size_t k = 0; k < r.spec.bipartitions.size(); ++k) {
      out << format_double(c.x1) << ',';
      if (two_d) out << format_double(c.x2);
      out << ',' << to_string(r.spec.bipartitions[k]) << ','
          << (c.stable ? 1 : 0);
      for (Field f : kAllFields) {
        out << ',';
        if (c.has_measures() && wanted(m, f)) {
          write_optional(out, field_value(c.reports[k], f));
        }
      }
      out << ',';
      if (c.stable && c.diffusion_scale > 0.0) {
        out << format_double(c.residual);
      }
      out << '\n';
    }
  }
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::vector<CsvRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kCsvHeader) parse_error("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 11) parse_error("expected 11 CSV fields: " + line);
    CsvRow row;
    const auto x1 = parse_optional(f[0]);
    if (!x1) parse_error("missing axis1 value");
    row.axis1 = *x1;
    row.axis2 = parse_optional(f[1]);
    row.bipartition = f[2];
    if (f[3] != "0" && f[3] != "1") parse_error("bad stable flag: " + f[3]);
    row.stable = f[3] == "1";
    row.e_n = parse_optional(f[4]);
    row.steer_12 = parse_optional(f[5]);
    row.steer_21 = parse_optional(f[6]);
    row.discord_12 = parse_optional(f[7]);
    row.discord_21 = parse_optional(f[8]);
    row.nu_minus_pt = parse_optional(f[9]);
    row.residual = parse_optional(f[10]);
    rows.push_back(std::move(row));
  }
  if (!header_seen) parse_error("CSV header missing");
  return rows;
}

std::string_view to_string(Field f) {
  switch (f) {
    case Field::EN: return "E_n";
    case Field::Steer12: return "steer_12";
    case Field::Steer21: return "steer_21";
    case Field::Discord12: return "discord_12";
    case Field::Discord21: return "discord_21";
    case Field::NuMinusPT: return "nu_minus_pt";
  }
  return "?";
}

std::vector<Field> fields_for(unsigned measures) {
  std::vector<Field> out;
  for (Field f : kAllFields) {
    if (wanted(measures, f)) out.push_back(f);
  }
  return out;
}

std::optional<double> field_value(const CorrelationReport& r, Field f) {
  switch (f) {
    case Field::EN: return r.e_n;
    case Field::Steer12: return r.steer_12;
    case Field::Steer21: return r.steer_21;
    case Field::Discord12: return r.discord_12;
    case Field::Discord21: return r.discord_21;
    case Field::NuMinusPT: return r.nu_minus_pt;
  }
  return std::nullopt;
}

void write_matrix(const SweepResult& r, std::size_t slot, Field f,
                  std::ostream& out) {
  out << provenance_header(r);
  out << "# matrix: " << to_string(f) << " "
      << to_string(r.spec.bipartitions.at(slot)) << ", " << r.rows()
      << " rows (axis1) x " << r.cols() << " columns (axis2)\n";
  for (std::size_t i = 0; i < r.rows(); ++i) {
    for (std::size_t j = 0; j < r.cols(); ++j) {
      const SweepCell& c = r.at(i, j);
      double v = std::numeric_limits<double>::quiet_NaN();
      if (c.has_measures()) v = *field_value(c.reports[slot], f);
      if (j) out << ' ';
      out << format_double(v);
    }
    out << '\n';
  }
}

std::string output_stem(const SweepResult& r) {
  if (r.spec.label.empty()) return r.spec.name;
  return r.spec.name + "_" + r.spec.label;
}

std::vector<std::filesystem::path> write_outputs(const SweepResult& r,
                                                 const std::filesystem::path& dir,
                                                 unsigned formats) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  }

  std::vector<fs::path> written;
  auto emit = [&](const fs::path& path, auto&& body) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string());
    body(out);
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
    written.push_back(path);
  };

  const std::string stem = output_stem(r);
  if (formats & kCsv) {
    emit(dir / (stem + ".csv"), [&](std::ostream& o) { write_csv(r, o); });
  }
  if (formats & kMatrix) {
    for (std::size_t k = 0; k < r.spec.bipartitions.size(); ++k) {
      for (Field f : fields_for(r.spec.measures)) {
        const std::string name = stem + "_" + std::string(to_string(f)) + "_" +
                                 std::string(to_string(r.spec.bipartitions[k])) +
                                 ".mat";
        emit(dir / name, [&](std::ostream& o) { write_matrix(r, k, f, o); });
      }
    }
    auto coords = [&](const std::vector<double>& values, const Axis& a) {
      return [&values, &a](std::ostream& o) {
        o << "# " << axis_line(a) << "\n";
        for (double v : values) o << format_double(v) << '\n';
      };
    };
    emit(dir / (stem + "_axis1.txt"), coords(r.axis1_values, r.spec.axis1));
    if (r.spec.axis2) {
      emit(dir / (stem + "_axis2.txt"), coords(r.axis2_values, *r.spec.axis2));
    }
  }
  return written;
}

SweepStats sweep_stats(const SweepResult& r) {
  SweepStats s;
  s.cells = r.cells.size();
  for (const SweepCell& c : r.cells) {
    if (c.stable) ++s.stable;
    if (c.error != ErrorCode::None) ++s.failed;
  }
  return s;
}

std::string summarize(const SweepResult& r) {
  const SweepStats st = sweep_stats(r);
  std::ostringstream out;
  char buf[64];
  for (std::size_t k = 0; k < r.spec.bipartitions.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.4f",
                  st.cells ? static_cast<double>(st.stable) / st.cells : 0.0);
    out << r.spec.name << " " << to_string(r.spec.bipartitions[k])
        << ": stable_fraction=" << buf;
    for (Field f : fields_for(r.spec.measures)) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const SweepCell& c : r.cells) {
        if (!c.has_measures()) continue;
        const double v = *field_value(c.reports[k], f);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      out << " " << to_string(f) << "=";
      if (lo <= hi) {
        std::snprintf(buf, sizeof buf, "[%.6g, %.6g]", lo, hi);
        out << buf;
      } else {
        out << "[]";
      }
    }
    out << "\n";
  }
  if (st.failed) {
    std::map<std::string_view, std::size_t> by_code;
    for (const SweepCell& c : r.cells) {
      if (c.error != ErrorCode::None) ++by_code[to_string(c.error)];
    }
    out << r.spec.name << " failed_cells=" << st.failed;
    for (const auto& [code, n] : by_code) out << " " << code << "=" << n;
    out << "\n";
  }
  return out.str();
}

}  // namespace mcom
