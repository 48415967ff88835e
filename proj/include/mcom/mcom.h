/*
 * C interface to the mcom correlation library.
 *
 * Objects are opaque handles created and released by the library. Every
 * fallible call returns an mcom_status; on failure mcom_last_error() holds a
 * message for the calling thread. Strings returned through char** must be
 * released with mcom_string_free.
 */
#ifndef MCOM_MCOM_H
#define MCOM_MCOM_H

#include <stddef.h>

#if defined(MCOM_BUILDING_LIBRARY)
#define MCOM_API __attribute__((visibility("default")))
#else
#define MCOM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mcom_status {
  MCOM_OK = 0,
  MCOM_INVALID_ARGUMENT = 1,
  MCOM_UNKNOWN_PRESET = 2,
  MCOM_CONFIG = 3,
  MCOM_IO = 4,
  MCOM_NUMERICAL = 5,
  MCOM_INTERNAL = 6
} mcom_status;

typedef enum mcom_bipartition {
  MCOM_CA = 0, /* cavity c | cavity a */
  MCOM_BA = 1, /* vibration | cavity a */
  MCOM_BC = 2  /* vibration | cavity c */
} mcom_bipartition;

typedef struct mcom_config mcom_config;
typedef struct mcom_result mcom_result;

/* Correlations of one two-mode state. Mode 1 is the first mode of the
 * bipartition; *_12 steers or measures mode 2 from mode 1. */
typedef struct mcom_report {
  double e_n;
  double steer_12;
  double steer_21;
  double discord_12;
  double discord_21;
  double nu_minus_pt;
} mcom_report;

typedef struct mcom_effective_params {
  double delta_a_eff;
  double delta_c;
  double g_a_lin;
  double g_c;
  double kappa_a;
  double kappa_c;
  double gamma_m;
  double omega_m;
  double n_th;
} mcom_effective_params;

typedef struct mcom_physical_params {
  double omega_m;
  double kappa_a;
  double kappa_c;
  double gamma_m;
  double g_a;
  double g_c;
  unsigned long long n_molecules;
  double delta_a;
  double delta_c;
  double drive_a;
  double drive_c;
  double temperature;
  int has_n_th; /* nonzero: use n_th instead of temperature */
  double n_th;
  double mech_frequency_hz;
} mcom_physical_params;

typedef struct mcom_steady_state {
  double alpha_a[2]; /* re, im */
  double alpha_c[2];
  double beta[2];
  double residual;
  size_t iterations;
  int converged;
  int multistable;
} mcom_steady_state;

MCOM_API const char* mcom_version(void);
MCOM_API const char* mcom_last_error(void);
MCOM_API const char* mcom_status_string(mcom_status status);
MCOM_API void mcom_string_free(char* s);

/* Presets */
MCOM_API size_t mcom_preset_count(void);
MCOM_API const char* mcom_preset_name(size_t index); /* NULL if out of range */
MCOM_API mcom_status mcom_preset_listing(int machine, char** text_out);

/* Run configuration */
MCOM_API mcom_status mcom_config_from_preset(const char* name, mcom_config** out);
MCOM_API mcom_status mcom_config_from_file(const char* path, mcom_config** out);
MCOM_API mcom_status mcom_config_set_out_dir(mcom_config* cfg, const char* dir);
MCOM_API mcom_status mcom_config_set_formats(mcom_config* cfg, const char* list);
MCOM_API mcom_status mcom_config_set_workers(mcom_config* cfg, unsigned workers);
MCOM_API mcom_status mcom_config_set_grid(mcom_config* cfg, size_t n1, size_t n2);
/* Switches to the steady-state pipeline with the reference physical set. */
MCOM_API mcom_status mcom_config_set_physical(mcom_config* cfg);
MCOM_API void mcom_config_free(mcom_config* cfg);

/* Sweeps */
MCOM_API mcom_status mcom_sweep(const mcom_config* cfg, mcom_result** out);
MCOM_API size_t mcom_result_rows(const mcom_result* r);
MCOM_API size_t mcom_result_cols(const mcom_result* r);
MCOM_API size_t mcom_result_bipartition_count(const mcom_result* r);
/* axis is 1 or 2 */
MCOM_API mcom_status mcom_result_axis_value(const mcom_result* r, int axis,
                                            size_t index, double* value);
/* *has_measures is 0 for unstable or failed cells; *stable reports the
 * stability verdict. report may be NULL. */
MCOM_API mcom_status mcom_result_cell(const mcom_result* r, size_t row,
                                      size_t col, size_t slot, int* stable,
                                      int* has_measures, mcom_report* report);
/* Fraction of cells whose evaluation raised a numerical error. */
MCOM_API double mcom_result_failed_fraction(const mcom_result* r);
/* Writes the configured formats into the configured output directory. */
MCOM_API mcom_status mcom_result_write(const mcom_result* r,
                                       const mcom_config* cfg);
MCOM_API mcom_status mcom_result_csv(const mcom_result* r, char** text_out);
MCOM_API mcom_status mcom_result_summary(const mcom_result* r, char** text_out);
MCOM_API void mcom_result_free(mcom_result* r);

/* Single-state helpers */
/* cm: row-major 4x4 covariance matrix (x1, p1, x2, p2), vacuum = 1/2. */
MCOM_API mcom_status mcom_correlations(const double cm[16], mcom_report* out);
/* Stationary 6x6 covariance matrix (row-major) of the linearized dynamics. */
MCOM_API mcom_status mcom_steady_covariance(const mcom_effective_params* p,
                                            double v_out[36], double* residual);
MCOM_API mcom_status mcom_solve_steady_state(const mcom_physical_params* p,
                                             mcom_steady_state* out);

#ifdef __cplusplus
}
#endif

#endif /* MCOM_MCOM_H */
