#include "mcom/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "mcom/presets.hpp"

namespace mcom {

namespace {

namespace pt = boost::property_tree;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::ConfigParse, what);
}

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  return s;
}

// Section view that remembers which keys were read so that unknown keys can
// be rejected afterwards.
class Section {
 public:
  Section(std::string name, const pt::ptree* tree)
      : name_(std::move(name)), tree_(tree) {}

  bool present() const { return tree_ != nullptr; }

  std::optional<std::string> str(const std::string& key) {
    used_.insert(key);
    if (!tree_) return std::nullopt;
    const auto child = tree_->get_child_optional(pt::ptree::path_type(key, '\0'));
    if (!child) return std::nullopt;
    return trim(child->data());
  }

  std::optional<double> number(const std::string& key) {
    const auto s = str(key);
    if (!s) return std::nullopt;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(*s, &used);
    } catch (const std::exception&) {
      bad(key, *s);
    }
    if (used != s->size()) bad(key, *s);
    return v;
  }

  std::optional<std::size_t> count(const std::string& key) {
    const auto s = str(key);
    if (!s) return std::nullopt;
    if (s->empty() || s->find_first_not_of("0123456789") != std::string::npos) {
      bad(key, *s);
    }
    try {
      return static_cast<std::size_t>(std::stoull(*s));
    } catch (const std::exception&) {
      bad(key, *s);
    }
  }

  std::optional<bool> flag(const std::string& key) {
    const auto s = str(key);
    if (!s) return std::nullopt;
    if (*s == "true" || *s == "1" || *s == "yes") return true;
    if (*s == "false" || *s == "0" || *s == "no") return false;
    bad(key, *s);
  }

  void set(const std::string& key, double& target) {
    if (const auto v = number(key)) target = *v;
  }

  void reject_unknown() const {
    if (!tree_) return;
    for (const auto& [key, child] : *tree_) {
      if (!used_.count(key)) {
        config_error("unknown key '" + key + "' in [" + name_ + "]");
      }
    }
  }

  [[noreturn]] void bad(const std::string& key, const std::string& value) const {
    config_error("bad value '" + value + "' for " + name_ + "." + key);
  }

 private:
  std::string name_;
  const pt::ptree* tree_;
  std::set<std::string> used_;
};

Section section(const pt::ptree& root, const std::string& name) {
  const auto child = root.get_child_optional(pt::ptree::path_type(name, '\0'));
  return Section(name, child ? &*child : nullptr);
}

Axis read_axis(Section& s) {
  Axis a;
  const auto param = s.str("parameter");
  if (!param) config_error("missing parameter in axis section");
  const auto p = parse_axis_parameter(*param);
  if (!p) s.bad("parameter", *param);
  a.parameter = *p;
  const auto lo = s.number("min");
  const auto hi = s.number("max");
  if (!lo || !hi) config_error("axis needs min and max");
  a.min = *lo;
  a.max = *hi;
  a.steps = s.count("steps").value_or(kDefaultGridSteps);
  if (const auto scale = s.str("scale")) {
    const auto sc = parse_axis_scale(*scale);
    if (!sc) s.bad("scale", *scale);
    a.scale = *sc;
  }
  return a;
}

void read_tolerances(Section& s, Tolerances& t) {
  s.set("lyapunov_residual", t.lyapunov_residual);
  s.set("stability_margin", t.stability_margin);
  s.set("steady_state_tol", t.steady_state_tol);
  if (const auto n = s.count("steady_state_max_iter")) t.steady_state_max_iter = *n;
  if (!(t.lyapunov_residual > 0.0) || !(t.stability_margin >= 0.0) ||
      !(t.steady_state_tol > 0.0) || t.steady_state_max_iter == 0) {
    config_error("tolerances must be positive");
  }
}

void read_effective(Section& s, EffectiveParams& e) {
  s.set("delta_a_eff", e.delta_a_eff);
  s.set("delta_c", e.delta_c);
  s.set("G_a_lin", e.g_a_lin);
  s.set("G_c", e.g_c);
  s.set("kappa_a", e.kappa_a);
  s.set("kappa_c", e.kappa_c);
  s.set("gamma_m", e.gamma_m);
  s.set("omega_m", e.omega_m);
  s.set("n_th", e.n_th);
}

void read_physical(Section& s, PhysicalParams& p) {
  s.set("omega_m", p.omega_m);
  s.set("kappa_a", p.kappa_a);
  s.set("kappa_c", p.kappa_c);
  s.set("gamma_m", p.gamma_m);
  s.set("g_a", p.g_a);
  s.set("g_c", p.g_c);
  if (const auto n = s.count("n_molecules")) p.n_molecules = *n;
  s.set("delta_a", p.delta_a);
  s.set("delta_c", p.delta_c);
  s.set("drive_a", p.drive_a);
  s.set("drive_c", p.drive_c);
  s.set("temperature", p.temperature);
  if (const auto n = s.number("n_th")) p.n_th_override = *n;
  s.set("mech_frequency_hz", p.mech_frequency_hz);
}

std::vector<Bipartition> read_bipartitions(Section& s) {
  const auto list = s.str("bipartitions");
  if (!list) return {Bipartition::CA};
  std::vector<Bipartition> out;
  std::istringstream in(*list);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto b = parse_bipartition(item);
    if (!b) s.bad("bipartitions", *list);
    out.push_back(*b);
  }
  if (out.empty()) s.bad("bipartitions", *list);
  return out;
}

RunConfig from_tree(const pt::ptree& root) {
  static const std::set<std::string> kSections{
      "run", "sweep", "base", "physical", "axis1", "axis2", "tolerances"};
  for (const auto& [name, child] : root) {
    if (!kSections.count(name)) {
      if (child.empty()) config_error("key '" + name + "' outside a section");
      config_error("unknown section [" + name + "]");
    }
  }

  Section run = section(root, "run");
  if (!run.present()) config_error("missing [run] section");
  const auto version = run.count("format_version");
  if (!version) config_error("missing run.format_version");
  if (*version != static_cast<std::size_t>(kConfigVersion)) {
    config_error("unsupported format_version " + std::to_string(*version));
  }

  RunConfig cfg;
  const auto preset = run.str("preset");
  const bool physical = run.flag("physical").value_or(false);
  Section sweep = section(root, "sweep");
  Section base = section(root, "base");
  Section phys = section(root, "physical");
  Section axis1 = section(root, "axis1");
  Section axis2 = section(root, "axis2");

  if (preset) {
    if (sweep.present() || base.present() || phys.present() ||
        axis1.present() || axis2.present()) {
      config_error("a preset run cannot also define a custom sweep");
    }
    try {
      cfg = preset_config(*preset);
    } catch (const Error& e) {
      config_error(e.what());
    }
    if (physical) cfg.spec = to_physical(cfg.spec);
  } else {
    if (!axis1.present()) {
      config_error("custom run needs [axis1] (or set run.preset)");
    }
    cfg.mode = RunMode::Custom;
    SweepSpec& s = cfg.spec;
    s.name = sweep.str("name").value_or("custom");
    s.label = sweep.str("label").value_or("");
    s.caption = sweep.str("caption").value_or("");
    s.bipartitions = read_bipartitions(sweep);
    if (const auto m = sweep.str("measures")) {
      const auto bits = parse_measures(*m);
      if (!bits) sweep.bad("measures", *m);
      s.measures = *bits;
    }
    if (const auto t = sweep.number("temperature")) s.temperature = *t;
    sweep.set("mech_frequency_hz", s.mech_frequency_hz);
    read_effective(base, s.base);
    if (physical) {
      s.physical = true;
      s.physical_base = reference_physical_params();
      read_physical(phys, s.physical_base);
    } else if (phys.present()) {
      config_error("[physical] requires run.physical = true");
    }
    s.axis1 = read_axis(axis1);
    if (axis2.present()) s.axis2 = read_axis(axis2);
  }

  Section tol = section(root, "tolerances");
  read_tolerances(tol, cfg.spec.tolerances);

  if (const auto out = run.str("out")) cfg.output_path = *out;
  if (const auto f = run.str("formats")) {
    const auto bits = parse_formats(*f);
    if (!bits) run.bad("formats", *f);
    cfg.output_formats = *bits;
  }
  if (const auto w = run.count("workers")) {
    if (*w == 0 || *w > 4096) run.bad("workers", std::to_string(*w));
    cfg.workers = static_cast<unsigned>(*w);
  }
  if (const auto g = run.str("grid")) {
    const auto grid = parse_grid(*g);
    if (!grid) run.bad("grid", *g);
    set_grid(cfg.spec, grid->first, grid->second);
  }

  for (Section* s : {&run, &sweep, &base, &phys, &axis1, &axis2, &tol}) {
    s->reject_unknown();
  }
  cfg.validate();
  return cfg;
}

}  // namespace

void RunConfig::validate() const {
  if ((mode == RunMode::Preset) != preset_name.has_value()) {
    config_error("exactly one of preset name or custom sweep is required");
  }
  if (workers < 1) config_error("workers must be at least 1");
  if ((output_formats & (kCsv | kMatrix)) == 0) {
    config_error("no output format selected");
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
}

RunConfig parse_config(std::istream& in, std::string_view source) {
  pt::ptree root;
  try {
    pt::ini_parser::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    config_error(std::string(source) + ": " + e.message() + " (line " +
                 std::to_string(e.line()) + ")");
  }
  try {
    return from_tree(root);
  } catch (const Error& e) {
    config_error(std::string(source) + ": " + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) config_error("cannot open config file " + file.string());
  return parse_config(in, file.string());
}

RunConfig preset_config(std::string_view name) {
  RunConfig cfg;
  cfg.mode = RunMode::Preset;
  cfg.spec = figure_preset(name);
  cfg.preset_name = cfg.spec.name;
  cfg.workers = default_workers();
  return cfg;
}

std::optional<std::pair<std::size_t, std::size_t>> parse_grid(std::string_view s) {
  auto parse_count = [](std::string_view part) -> std::optional<std::size_t> {
    if (part.empty() || part.size() > 9 ||
        part.find_first_not_of("0123456789") != std::string_view::npos) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(std::stoul(std::string(part)));
  };
  const auto x = s.find('x');
  const auto n1 = parse_count(s.substr(0, x));
  const auto n2 = x == std::string_view::npos ? n1 : parse_count(s.substr(x + 1));
  if (!n1 || !n2 || *n1 < 2 || *n2 < 2) return std::nullopt;
  return std::make_pair(*n1, *n2);
}

unsigned default_workers() {
  if (const char* env = std::getenv("MCOM_WORKERS")) {
    char* end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1 && n <= 4096) {
      return static_cast<unsigned>(n);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string preset_listing(bool machine) {
  std::ostringstream out;
  auto axis_text = [](const Axis& a) {
    return std::string(to_string(a.parameter)) + "=[" + format_double(a.min) +
           "," + format_double(a.max) + "]x" + std::to_string(a.steps);
  };
  if (!machine) {
    char line[256];
    std::snprintf(line, sizeof line, "%-7s %-9s %-6s %-11s %-9s %-8s %-8s %-8s %-8s %-8s %-7s %s\n",
                  "preset", "label", "bipart", "delta_a_eff", "delta_c",
                  "kappa_a", "kappa_c", "G_a_lin", "G_c", "gamma_m", "T[K]",
                  "axes");
    out << line;
  }
  for (const auto& name : preset_names()) {
    const SweepSpec s = figure_preset(name);
    const EffectiveParams& e = s.base;
    std::string bips;
    for (Bipartition b : s.bipartitions) {
      if (!bips.empty()) bips += ',';
      bips += to_string(b);
    }
    std::string axes = axis_text(s.axis1);
    if (s.axis2) axes += " " + axis_text(*s.axis2);
    const std::string temp =
        s.temperature ? format_double(*s.temperature) : std::string("axis");
    if (machine) {
      out << "preset=" << s.name << "\nlabel=" << s.label
          << "\nbipartitions=" << bips
          << "\nmeasures=" << measures_to_string(s.measures)
          << "\ndelta_a_eff=" << format_double(e.delta_a_eff)
          << "\ndelta_c=" << format_double(e.delta_c)
          << "\nkappa_a=" << format_double(e.kappa_a)
          << "\nkappa_c=" << format_double(e.kappa_c)
          << "\nG_a_lin=" << format_double(e.g_a_lin)
          << "\nG_c=" << format_double(e.g_c)
          << "\ngamma_m=" << format_double(e.gamma_m)
          << "\nomega_m=" << format_double(e.omega_m)
          << "\ntemperature=" << temp
          << "\naxis1=" << axis_text(s.axis1);
      if (s.axis2) out << "\naxis2=" << axis_text(*s.axis2);
      out << "\ncaption=" << s.caption << "\n\n";
    } else {
      char line[512];
      std::snprintf(line, sizeof line,
                    "%-7s %-9s %-6s %-11g %-9g %-8g %-8g %-8g %-8g %-8g %-7s %s\n",
                    s.name.c_str(), s.label.c_str(), bips.c_str(),
                    e.delta_a_eff, e.delta_c, e.kappa_a, e.kappa_c, e.g_a_lin,
                    e.g_c, e.gamma_m, temp.c_str(), axes.c_str());
      out << line << "        " << s.caption << "\n";
    }
  }
  return out.str();
}

}  // namespace mcom
