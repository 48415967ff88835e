#include "mcom/mcom.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "mcom/config.hpp"
#include "mcom/io.hpp"
#include "mcom/lindyn.hpp"
#include "mcom/measures.hpp"
#include "mcom/presets.hpp"
#include "mcom/sweep.hpp"

struct mcom_config {
  mcom::RunConfig cfg;
};

struct mcom_result {
  mcom::SweepResult result;
};

namespace {

thread_local std::string g_last_error;

mcom_status status_for(mcom::ErrorCode code) {
  using mcom::ErrorCode;
  switch (code) {
    case ErrorCode::None: return MCOM_OK;
    case ErrorCode::InvalidParameter:
    case ErrorCode::InvalidSpec: return MCOM_INVALID_ARGUMENT;
    case ErrorCode::UnknownPreset: return MCOM_UNKNOWN_PRESET;
    case ErrorCode::ConfigParse: return MCOM_CONFIG;
    case ErrorCode::Io: return MCOM_IO;
    default: return MCOM_NUMERICAL;
  }
}

mcom_status fail(mcom_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs f, translating exceptions into statuses. Nothing escapes the C
// boundary.
template <typename F>
mcom_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const mcom::Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MCOM_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MCOM_INTERNAL, e.what());
  } catch (...) {
    return fail(MCOM_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

mcom_report to_c(const mcom::CorrelationReport& r) {
  return {r.e_n, r.steer_12, r.steer_21, r.discord_12, r.discord_21,
          r.nu_minus_pt};
}

#define MCOM_REQUIRE(cond)                                            \
  do {                                                                \
    if (!(cond)) return fail(MCOM_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* mcom_version(void) {
  static const std::string v(mcom::version());
  return v.c_str();
}

const char* mcom_last_error(void) { return g_last_error.c_str(); }

const char* mcom_status_string(mcom_status status) {
  switch (status) {
    case MCOM_OK: return "ok";
    case MCOM_INVALID_ARGUMENT: return "invalid argument";
    case MCOM_UNKNOWN_PRESET: return "unknown preset";
    case MCOM_CONFIG: return "configuration error";
    case MCOM_IO: return "i/o error";
    case MCOM_NUMERICAL: return "numerical error";
    case MCOM_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void mcom_string_free(char* s) { std::free(s); }

size_t mcom_preset_count(void) { return mcom::preset_names().size(); }

const char* mcom_preset_name(size_t index) {
  const auto& names = mcom::preset_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

mcom_status mcom_preset_listing(int machine, char** text_out) {
  MCOM_REQUIRE(text_out);
  return guarded([&] {
    *text_out = copy_string(mcom::preset_listing(machine != 0));
    return MCOM_OK;
  });
}

mcom_status mcom_config_from_preset(const char* name, mcom_config** out) {
  MCOM_REQUIRE(name && out);
  *out = nullptr;
  return guarded([&] {
    *out = new mcom_config{mcom::preset_config(name)};
    return MCOM_OK;
  });
}

mcom_status mcom_config_from_file(const char* path, mcom_config** out) {
  MCOM_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] {
    *out = new mcom_config{mcom::load_config(path)};
    return MCOM_OK;
  });
}

mcom_status mcom_config_set_out_dir(mcom_config* cfg, const char* dir) {
  MCOM_REQUIRE(cfg && dir && *dir);
  return guarded([&] {
    cfg->cfg.output_path = dir;
    return MCOM_OK;
  });
}

mcom_status mcom_config_set_formats(mcom_config* cfg, const char* list) {
  MCOM_REQUIRE(cfg && list);
  const auto bits = mcom::parse_formats(list);
  if (!bits) {
    return fail(MCOM_CONFIG, std::string("bad format list '") + list + "'");
  }
  cfg->cfg.output_formats = *bits;
  return MCOM_OK;
}

mcom_status mcom_config_set_workers(mcom_config* cfg, unsigned workers) {
  MCOM_REQUIRE(cfg && workers >= 1);
  cfg->cfg.workers = workers;
  return MCOM_OK;
}

mcom_status mcom_config_set_grid(mcom_config* cfg, size_t n1, size_t n2) {
  MCOM_REQUIRE(cfg && n1 >= 2 && n2 >= 2);
  mcom::set_grid(cfg->cfg.spec, n1, n2);
  return MCOM_OK;
}

mcom_status mcom_config_set_physical(mcom_config* cfg) {
  MCOM_REQUIRE(cfg);
  return guarded([&] {
    if (!cfg->cfg.spec.physical) cfg->cfg.spec = mcom::to_physical(cfg->cfg.spec);
    return MCOM_OK;
  });
}

void mcom_config_free(mcom_config* cfg) { delete cfg; }

mcom_status mcom_sweep(const mcom_config* cfg, mcom_result** out) {
  MCOM_REQUIRE(cfg && out);
  *out = nullptr;
  return guarded([&] {
    cfg->cfg.validate();
    *out = new mcom_result{mcom::run_sweep(cfg->cfg.spec, cfg->cfg.workers)};
    return MCOM_OK;
  });
}

size_t mcom_result_rows(const mcom_result* r) { return r ? r->result.rows() : 0; }
size_t mcom_result_cols(const mcom_result* r) { return r ? r->result.cols() : 0; }

size_t mcom_result_bipartition_count(const mcom_result* r) {
  return r ? r->result.spec.bipartitions.size() : 0;
}

mcom_status mcom_result_axis_value(const mcom_result* r, int axis, size_t index,
                                   double* value) {
  MCOM_REQUIRE(r && value && (axis == 1 || axis == 2));
  const auto& values = axis == 1 ? r->result.axis1_values : r->result.axis2_values;
  MCOM_REQUIRE(index < values.size());
  *value = values[index];
  return MCOM_OK;
}

mcom_status mcom_result_cell(const mcom_result* r, size_t row, size_t col,
                             size_t slot, int* stable, int* has_measures,
                             mcom_report* report) {
  MCOM_REQUIRE(r && row < r->result.rows() && col < r->result.cols());
  MCOM_REQUIRE(slot < r->result.spec.bipartitions.size());
  const mcom::SweepCell& c = r->result.at(row, col);
  if (stable) *stable = c.stable ? 1 : 0;
  if (has_measures) *has_measures = c.has_measures() ? 1 : 0;
  if (report) *report = c.has_measures() ? to_c(c.reports[slot]) : mcom_report{};
  return MCOM_OK;
}

double mcom_result_failed_fraction(const mcom_result* r) {
  if (!r || r->result.cells.empty()) return 0.0;
  const auto st = mcom::sweep_stats(r->result);
  return static_cast<double>(st.failed) / static_cast<double>(st.cells);
}

mcom_status mcom_result_write(const mcom_result* r, const mcom_config* cfg) {
  MCOM_REQUIRE(r && cfg);
  return guarded([&] {
    mcom::write_outputs(r->result, cfg->cfg.output_path, cfg->cfg.output_formats);
    return MCOM_OK;
  });
}

mcom_status mcom_result_csv(const mcom_result* r, char** text_out) {
  MCOM_REQUIRE(r && text_out);
  return guarded([&] {
    std::ostringstream out;
    mcom::write_csv(r->result, out);
    *text_out = copy_string(out.str());
    return MCOM_OK;
  });
}

mcom_status mcom_result_summary(const mcom_result* r, char** text_out) {
  MCOM_REQUIRE(r && text_out);
  return guarded([&] {
    *text_out = copy_string(mcom::summarize(r->result));
    return MCOM_OK;
  });
}

void mcom_result_free(mcom_result* r) { delete r; }

mcom_status mcom_correlations(const double cm[16], mcom_report* out) {
  MCOM_REQUIRE(cm && out);
  return guarded([&] {
    const mcom::Mat4 m = Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>>(cm);
    *out = to_c(mcom::full_report(mcom::TwoModeCM::from_matrix(m)));
    return MCOM_OK;
  });
}

mcom_status mcom_steady_covariance(const mcom_effective_params* p,
                                   double v_out[36], double* residual) {
  MCOM_REQUIRE(p && v_out);
  return guarded([&] {
    const mcom::EffectiveParams e = mcom::effective_direct(
        p->delta_a_eff, p->delta_c, p->g_a_lin, p->g_c, p->kappa_a, p->kappa_c,
        p->gamma_m, p->n_th, p->omega_m);
    const auto sol =
        mcom::solve_lyapunov(mcom::build_drift(e), mcom::build_diffusion(e));
    Eigen::Map<Eigen::Matrix<double, 6, 6, Eigen::RowMajor>> v(v_out);
    v = sol.cm.v;
    if (residual) *residual = sol.residual;
    return MCOM_OK;
  });
}

mcom_status mcom_solve_steady_state(const mcom_physical_params* p,
                                    mcom_steady_state* out) {
  MCOM_REQUIRE(p && out);
  return guarded([&] {
    mcom::PhysicalParams q;
    q.omega_m = p->omega_m;
    q.kappa_a = p->kappa_a;
    q.kappa_c = p->kappa_c;
    q.gamma_m = p->gamma_m;
    q.g_a = p->g_a;
    q.g_c = p->g_c;
    q.n_molecules = p->n_molecules;
    q.delta_a = p->delta_a;
    q.delta_c = p->delta_c;
    q.drive_a = p->drive_a;
    q.drive_c = p->drive_c;
    q.temperature = p->temperature;
    if (p->has_n_th) q.n_th_override = p->n_th;
    q.mech_frequency_hz = p->mech_frequency_hz;
    q.validate();
    const mcom::SteadyState ss = mcom::solve_steady_state(q);
    *out = mcom_steady_state{{ss.alpha_a.real(), ss.alpha_a.imag()},
                             {ss.alpha_c.real(), ss.alpha_c.imag()},
                             {ss.beta.real(), ss.beta.imag()},
                             ss.residual,
                             ss.iterations,
                             ss.converged ? 1 : 0,
                             ss.multistable ? 1 : 0};
    return ss.converged ? MCOM_OK
                        : fail(MCOM_NUMERICAL, "steady state did not converge");
  });
}

}  // extern "C"
