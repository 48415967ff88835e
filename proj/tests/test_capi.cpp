// Exercises the shared library through its C header only, and the command
// line tool built on top of it.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "mcom/mcom.h"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MCOM_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mcom_capi_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("version and presets") {
  CHECK(std::string(mcom_version()).size() > 0);
  CHECK(mcom_preset_count() == 27);
  CHECK(std::string(mcom_preset_name(0)) == "fig2a");
  CHECK(mcom_preset_name(1000) == nullptr);
  char* text = nullptr;
  REQUIRE(mcom_preset_listing(1, &text) == MCOM_OK);
  CHECK(std::string(text).find("preset=fig10c") != std::string::npos);
  mcom_string_free(text);
}

TEST_CASE("argument checking") {
  mcom_config* cfg = nullptr;
  CHECK(mcom_config_from_preset(nullptr, &cfg) == MCOM_INVALID_ARGUMENT);
  CHECK(mcom_config_from_preset("fig99z", &cfg) == MCOM_UNKNOWN_PRESET);
  CHECK(cfg == nullptr);
  CHECK(std::string(mcom_last_error()).find("fig99z") != std::string::npos);
  CHECK(mcom_config_from_file("/nonexistent.ini", &cfg) == MCOM_CONFIG);
  REQUIRE(mcom_config_from_preset("fig2a", &cfg) == MCOM_OK);
  CHECK(mcom_config_set_workers(cfg, 0) == MCOM_INVALID_ARGUMENT);
  CHECK(mcom_config_set_formats(cfg, "png") == MCOM_CONFIG);
  CHECK(mcom_config_set_grid(cfg, 1, 5) == MCOM_INVALID_ARGUMENT);
  mcom_config_free(cfg);
  CHECK(std::string(mcom_status_string(MCOM_IO)) == "i/o error");
}

TEST_CASE("sweep through handles") {
  mcom_config* cfg = nullptr;
  REQUIRE(mcom_config_from_preset("fig9a", &cfg) == MCOM_OK);
  REQUIRE(mcom_config_set_grid(cfg, 21, 2) == MCOM_OK);
  REQUIRE(mcom_config_set_workers(cfg, 2) == MCOM_OK);
  mcom_result* r = nullptr;
  REQUIRE(mcom_sweep(cfg, &r) == MCOM_OK);
  CHECK(mcom_result_rows(r) == 21);
  CHECK(mcom_result_cols(r) == 1);
  CHECK(mcom_result_bipartition_count(r) == 1);
  double x = 0.0;
  CHECK(mcom_result_axis_value(r, 1, 20, &x) == MCOM_OK);
  CHECK(x == 2.0);
  CHECK(mcom_result_axis_value(r, 2, 0, &x) == MCOM_INVALID_ARGUMENT);

  int stable = 0, has = 0;
  mcom_report rep;
  REQUIRE(mcom_result_cell(r, 10, 0, 0, &stable, &has, &rep) == MCOM_OK);
  CHECK(stable == 1);
  CHECK(has == 1);
  CHECK(rep.e_n > 0.0);
  CHECK(mcom_result_cell(r, 21, 0, 0, &stable, &has, &rep) == MCOM_INVALID_ARGUMENT);
  CHECK(mcom_result_failed_fraction(r) == 0.0);

  char* csv = nullptr;
  REQUIRE(mcom_result_csv(r, &csv) == MCOM_OK);
  CHECK(std::string(csv).find("axis1,axis2,bipartition,stable,E_n") != std::string::npos);
  mcom_string_free(csv);

  const fs::path dir = scratch("write");
  REQUIRE(mcom_config_set_out_dir(cfg, dir.c_str()) == MCOM_OK);
  REQUIRE(mcom_result_write(r, cfg) == MCOM_OK);
  CHECK(fs::exists(dir / "fig9a_ca.csv"));

  REQUIRE(mcom_config_set_out_dir(cfg, "/proc/mcom_cannot_write_here") == MCOM_OK);
  CHECK(mcom_result_write(r, cfg) == MCOM_IO);

  mcom_result_free(r);
  mcom_config_free(cfg);
  fs::remove_all(dir);
}

TEST_CASE("single-state helpers") {
  const double c = std::cosh(2.0) / 2.0, s = std::sinh(2.0) / 2.0;
  const double tmsv[16] = {c, 0, s, 0, 0, c, 0, -s, s, 0, c, 0, 0, -s, 0, c};
  mcom_report rep;
  REQUIRE(mcom_correlations(tmsv, &rep) == MCOM_OK);
  CHECK(std::abs(rep.e_n - 2.0) <= 1e-9);
  CHECK(std::abs(rep.steer_12 - std::log(std::cosh(2.0))) <= 1e-9);

  double bad[16] = {0};
  CHECK(mcom_correlations(bad, &rep) == MCOM_NUMERICAL);

  mcom_effective_params e{1.0, -1.0, 0.003, 0.003, 0.003, 0.003, 0.005, 1.0, 0.0};
  double v[36];
  double residual = 1.0;
  REQUIRE(mcom_steady_covariance(&e, v, &residual) == MCOM_OK);
  CHECK(residual <= 1e-10);
  CHECK(v[1] == v[6]);
  e.kappa_a = -1.0;
  CHECK(mcom_steady_covariance(&e, v, &residual) == MCOM_INVALID_ARGUMENT);

  mcom_physical_params p{1.0, 1.0, 0.5 / 30, 0.16 / 30, 0.1e9 / 30e12, 0.08e9 / 30e12,
                         1000000ull, 1.0, -1.0, 0.0, 0.0, 210.0, 0, 0.0, 30e12};
  p.g_a = 0.08e9 / 30e12;
  p.g_c = 0.1e9 / 30e12;
  mcom_steady_state ss;
  REQUIRE(mcom_solve_steady_state(&p, &ss) == MCOM_OK);
  CHECK(ss.alpha_a[0] == 0.0);
  CHECK(ss.beta[1] == 0.0);
}

TEST_CASE("command line") {
  const fs::path dir = scratch("cli");
  const std::string out = (dir / "results").string();

  SUBCASE("preset run writes CSV and matrices") {
    CHECK(run_cli("run --preset fig2a --grid 6x5 --workers 2 --out " + out +
                  " > /dev/null") == 0);
    CHECK(fs::exists(fs::path(out) / "fig2a_E_ca.csv"));
    CHECK(fs::exists(fs::path(out) / "fig2a_E_ca_E_n_CA.mat"));
  }

  SUBCASE("formats flag") {
    CHECK(run_cli("run --preset fig4b --grid 3x3 --formats csv --out " + out +
                  " > /dev/null") == 0);
    CHECK(fs::exists(fs::path(out) / "fig4b_D_Ba.csv"));
    CHECK_FALSE(fs::exists(fs::path(out) / "fig4b_D_Ba_axis1.txt"));
  }

  SUBCASE("config file") {
    const fs::path ini = dir / "run.ini";
    std::ofstream(ini) << "[run]\nformat_version = 1\npreset = fig9c\ngrid = 7\nout = "
                       << out << "\nformats = csv\n";
    CHECK(run_cli("run --config " + ini.string() + " > /dev/null") == 0);
    CHECK(slurp(fs::path(out) / "fig9c_Bc.csv").find("# preset: fig9c") != std::string::npos);
  }

  SUBCASE("configuration errors exit with 2") {
    CHECK(run_cli("run --config " + (dir / "missing.ini").string() + " 2> /dev/null") == 2);
    CHECK(run_cli("run --preset fig99 2> /dev/null") == 2);
    CHECK(run_cli("run --preset fig2a --grid 1x1 2> /dev/null") == 2);
    CHECK(run_cli("run 2> /dev/null") == 2);
    CHECK(run_cli("frobnicate > /dev/null 2>&1") == 2);
  }

  SUBCASE("unwritable output exits with 4") {
    CHECK(run_cli("run --preset fig9a --grid 3 --out /proc/mcom_nope > /dev/null 2>&1") == 4);
  }

  SUBCASE("listing") {
    const fs::path listing = dir / "list.txt";
    CHECK(run_cli("list-presets --machine > " + listing.string()) == 0);
    CHECK(slurp(listing).find("preset=fig8c") != std::string::npos);
  }

  SUBCASE("worker count from the environment") {
    CHECK(run_cli("run --preset fig9a --grid 5 --formats csv --out " + out +
                  " > /dev/null") == 0);
    const std::string a = slurp(fs::path(out) / "fig9a_ca.csv");
    ::setenv("MCOM_WORKERS", "3", 1);
    CHECK(run_cli("run --preset fig9a --grid 5 --formats csv --out " + out +
                  " > /dev/null") == 0);
    ::unsetenv("MCOM_WORKERS");
    CHECK(slurp(fs::path(out) / "fig9a_ca.csv") == a);
  }

  fs::remove_all(dir);
}
