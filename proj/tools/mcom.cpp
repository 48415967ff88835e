// mcom: run figure presets or custom sweeps and write CSV / matrix files.
//
//   mcom run --preset fig2a --out results/
//   mcom run --config sweep.ini --workers 8
//   mcom list-presets [--machine]

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "mcom/mcom.h"

namespace {

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitIo = 4,
};

int exit_for(mcom_status s) {
  switch (s) {
    case MCOM_OK: return kExitOk;
    case MCOM_IO: return kExitIo;
    case MCOM_NUMERICAL:
    case MCOM_INTERNAL: return kExitNumerical;
    default: return kExitConfig;
  }
}

int report(mcom_status s, const char* what) {
  std::fprintf(stderr, "mcom: %s: %s\n", what, mcom_last_error());
  return exit_for(s);
}

struct RunOptions {
  std::string preset;
  std::string config;
  std::string out;
  std::string formats;
  std::string grid;
  unsigned workers = 0;
  bool physical = false;
};

// "101x51" or "101" (square / one-dimensional).
bool parse_grid(const std::string& s, size_t& n1, size_t& n2) {
  const auto x = s.find('x');
  try {
    size_t used = 0;
    n1 = std::stoul(s.substr(0, x), &used);
    if (used != (x == std::string::npos ? s.size() : x)) return false;
    if (x == std::string::npos) {
      n2 = n1;
    } else {
      const std::string rest = s.substr(x + 1);
      n2 = std::stoul(rest, &used);
      if (used != rest.size()) return false;
    }
  } catch (const std::exception&) {
    return false;
  }
  return n1 >= 2 && n2 >= 2;
}

int run(const RunOptions& o) {
  mcom_config* cfg = nullptr;
  mcom_status s = o.config.empty() ? mcom_config_from_preset(o.preset.c_str(), &cfg)
                                   : mcom_config_from_file(o.config.c_str(), &cfg);
  if (s != MCOM_OK) {
    // Unknown presets and unreadable config files are both configuration
    // errors from the user's point of view.
    std::fprintf(stderr, "mcom: config: %s\n", mcom_last_error());
    return kExitConfig;
  }

  int code = kExitOk;
  auto check = [&](mcom_status st, const char* what) {
    if (st == MCOM_OK) return true;
    code = report(st, what);
    return false;
  };

  bool ok = true;
  if (ok && !o.out.empty()) ok = check(mcom_config_set_out_dir(cfg, o.out.c_str()), "--out");
  if (ok && !o.formats.empty()) ok = check(mcom_config_set_formats(cfg, o.formats.c_str()), "--formats");
  if (ok && o.workers > 0) ok = check(mcom_config_set_workers(cfg, o.workers), "--workers");
  if (ok && !o.grid.empty()) {
    size_t n1 = 0, n2 = 0;
    if (!parse_grid(o.grid, n1, n2)) {
      std::fprintf(stderr, "mcom: --grid: expected N1xN2 with N >= 2, got '%s'\n",
                   o.grid.c_str());
      code = kExitConfig;
      ok = false;
    } else {
      ok = check(mcom_config_set_grid(cfg, n1, n2), "--grid");
    }
  }
  if (ok && o.physical) ok = check(mcom_config_set_physical(cfg), "--physical");

  mcom_result* result = nullptr;
  if (ok) {
    ok = check(mcom_sweep(cfg, &result), "sweep");
  }
  if (ok) ok = check(mcom_result_write(result, cfg), "write");
  if (ok) {
    char* text = nullptr;
    if (check(mcom_result_summary(result, &text), "summary")) {
      std::fputs(text, stdout);
      mcom_string_free(text);
    }
    const double failed = mcom_result_failed_fraction(result);
    if (failed > 0.5) {
      std::fprintf(stderr, "mcom: numerical failures in %.1f%% of cells\n",
                   100.0 * failed);
      code = kExitNumerical;
    }
  }
  mcom_result_free(result);
  mcom_config_free(cfg);
  return code;
}

int list_presets(bool machine) {
  char* text = nullptr;
  const mcom_status s = mcom_preset_listing(machine ? 1 : 0, &text);
  if (s != MCOM_OK) return report(s, "list-presets");
  std::fputs(text, stdout);
  mcom_string_free(text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state quantum correlations of a double-cavity molecular "
               "optomechanical system"};
  app.set_version_flag("--version", std::string(mcom_version()));
  app.require_subcommand(1);

  RunOptions opts;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a preset or a config file");
  auto* preset = run_cmd->add_option("--preset", opts.preset, "Figure preset, e.g. fig2a");
  auto* config = run_cmd->add_option("--config", opts.config, "INI run file");
  preset->excludes(config);
  config->excludes(preset);
  run_cmd->add_option("--out", opts.out, "Output directory (default: results)");
  run_cmd->add_option("--formats", opts.formats, "csv,matrix");
  run_cmd->add_option("--workers", opts.workers,
                      "Worker threads (default: MCOM_WORKERS or core count)")
      ->check(CLI::Range(1u, 4096u));
  run_cmd->add_option("--grid", opts.grid, "Grid size N1xN2");
  run_cmd->add_flag("--physical", opts.physical,
                    "Use the steady-state pipeline instead of caption parameters");

  bool machine = false;
  CLI::App* list_cmd = app.add_subcommand("list-presets", "List figure presets");
  list_cmd->add_flag("--machine", machine, "key=value output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (run_cmd->parsed()) {
    if (opts.preset.empty() && opts.config.empty()) {
      std::fprintf(stderr, "mcom: run needs --preset or --config\n");
      return kExitConfig;
    }
    return run(opts);
  }
  return list_presets(machine);
}
