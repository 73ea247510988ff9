/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface to the VMBPBB library: KZ/KZFT bandpass filters, periodic
 * block bootstrap, the multi-component bootstrap pipeline and the
 * PBB-vs-VMBPBB simulation study.
 *
 * Conventions:
 *  - Every function returns a vmbpbb_status. On failure, vmbpbb_last_error()
 *    returns a message for the calling thread.
 *  - Objects are opaque handles released with the matching *_destroy call.
 *    Destroying NULL is a no-op.
 *  - Array outputs follow the (buffer, capacity, *length) pattern: *length
 *    is always set to the required size; VMBPBB_ERR_BUFFER_TOO_SMALL is
 *    returned when capacity is insufficient. Passing a NULL buffer with
 *    capacity 0 is a size query.
 */
#ifndef VMBPBB_H
#define VMBPBB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VMBPBB_BUILDING_LIBRARY)
#    define VMBPBB_API __declspec(dllexport)
#  else
#    define VMBPBB_API __declspec(dllimport)
#  endif
#else
#  define VMBPBB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vmbpbb_status {
  VMBPBB_OK = 0,
  VMBPBB_ERR_INVALID_ARGUMENT = 1,
  VMBPBB_ERR_INVALID_PERIOD = 2,
  VMBPBB_ERR_SERIES_TOO_SHORT = 3,
  VMBPBB_ERR_DEGENERATE_SEPARATION = 4,
  VMBPBB_ERR_INSUFFICIENT_RESAMPLES = 5,
  VMBPBB_ERR_DEGENERATE_BAND = 6,
  VMBPBB_ERR_UNDEFINED_CORRELATION = 7,
  VMBPBB_ERR_UNDEFINED_CUTOFF = 8,
  VMBPBB_ERR_CONFIG = 9,
  VMBPBB_ERR_NULL_POINTER = 10,
  VMBPBB_ERR_BUFFER_TOO_SMALL = 11,
  VMBPBB_ERR_OUT_OF_RANGE = 12,
  VMBPBB_ERR_INTERNAL = 99
} vmbpbb_status;

typedef enum vmbpbb_edge_policy {
  VMBPBB_EDGE_RENORMALIZE = 0,
  VMBPBB_EDGE_TRUNCATE = 1
} vmbpbb_edge_policy;

typedef enum vmbpbb_mode { VMBPBB_MODE_VMBPBB = 0, VMBPBB_MODE_PBB = 1 } vmbpbb_mode;

typedef struct vmbpbb_filter_spec {
  int m;
  int k;
  double nu;
} vmbpbb_filter_spec;

typedef struct vmbpbb_series vmbpbb_series;
typedef struct vmbpbb_result vmbpbb_result;
typedef struct vmbpbb_scenario vmbpbb_scenario;
typedef struct vmbpbb_grid vmbpbb_grid;

VMBPBB_API const char* vmbpbb_version(void);
VMBPBB_API const char* vmbpbb_last_error(void);
/* Kebab-case category, e.g. "invalid-period". */
VMBPBB_API const char* vmbpbb_status_name(vmbpbb_status status);

/* ---- series ------------------------------------------------------------ */

VMBPBB_API vmbpbb_status vmbpbb_series_create(const double* values, size_t n,
                                              int64_t start_index, vmbpbb_series** out);
VMBPBB_API void vmbpbb_series_destroy(vmbpbb_series* series);
VMBPBB_API vmbpbb_status vmbpbb_series_length(const vmbpbb_series* series, size_t* n);
VMBPBB_API vmbpbb_status vmbpbb_series_start_index(const vmbpbb_series* series,
                                                   int64_t* start_index);
VMBPBB_API vmbpbb_status vmbpbb_series_values(const vmbpbb_series* series, double* buffer,
                                              size_t capacity, size_t* length);

/* means and counts must each hold `period` entries. */
VMBPBB_API vmbpbb_status vmbpbb_periodic_mean(const vmbpbb_series* series, size_t period,
                                              double* means, size_t* counts);
VMBPBB_API vmbpbb_status vmbpbb_periodogram(const vmbpbb_series* series, double* frequencies,
                                            double* power, size_t capacity, size_t* length);

/* ---- filters ----------------------------------------------------------- */

VMBPBB_API vmbpbb_status vmbpbb_kz_coefficients(int m, int k, double* weights, size_t capacity,
                                                size_t* length);
VMBPBB_API vmbpbb_status vmbpbb_kz_apply(const vmbpbb_series* series, int m, int k,
                                         vmbpbb_edge_policy edge, vmbpbb_series** out);
/* Complex KZFT output as separate real / imaginary arrays. */
VMBPBB_API vmbpbb_status vmbpbb_kzft_apply(const vmbpbb_series* series, vmbpbb_filter_spec spec,
                                           vmbpbb_edge_policy edge, double* real, double* imag,
                                           size_t capacity, size_t* length,
                                           int64_t* start_index);
/* 2 Re(KZFT): the real component passed by the bandpass. */
VMBPBB_API vmbpbb_status vmbpbb_kzft_component(const vmbpbb_series* series,
                                               vmbpbb_filter_spec spec, vmbpbb_edge_policy edge,
                                               vmbpbb_series** out);
VMBPBB_API vmbpbb_status vmbpbb_energy_transfer(double lambda, int m, int k, double nu,
                                                double* energy);
VMBPBB_API vmbpbb_status vmbpbb_half_power_cutoff(int m, int k, double* offset);
/* specs must hold `count` entries. */
VMBPBB_API vmbpbb_status vmbpbb_select_filter_specs(const int* periods, size_t count,
                                                    double narrow_factor,
                                                    vmbpbb_filter_spec* specs);
/* components must hold `count` handles; each is owned by the caller. */
VMBPBB_API vmbpbb_status vmbpbb_decompose(const vmbpbb_series* series, const int* periods,
                                          size_t count, double narrow_factor,
                                          vmbpbb_edge_policy edge, vmbpbb_series** components);

/* ---- pipeline ---------------------------------------------------------- */

typedef struct vmbpbb_pipeline_config {
  const int* periods;
  size_t period_count;
  size_t resamples;
  uint64_t seed;
  double narrow_factor; /* 1 = standard design */
  vmbpbb_edge_policy edge;
  vmbpbb_mode mode;
  double alpha; /* 0.05 for 95% bands */
  unsigned threads;
} vmbpbb_pipeline_config;

/* Fills defaults: resamples 1000, seed 0, narrow 1, renormalize, vmbpbb,
 * alpha 0.05, threads 1. */
VMBPBB_API void vmbpbb_pipeline_config_init(vmbpbb_pipeline_config* cfg);

VMBPBB_API vmbpbb_status vmbpbb_run_pipeline(const vmbpbb_series* series,
                                             const vmbpbb_pipeline_config* cfg,
                                             vmbpbb_result** out);
VMBPBB_API void vmbpbb_result_destroy(vmbpbb_result* result);
VMBPBB_API vmbpbb_status vmbpbb_result_length(const vmbpbb_result* result, size_t* n,
                                              int64_t* start_index);
VMBPBB_API vmbpbb_status vmbpbb_result_component_count(const vmbpbb_result* result,
                                                       size_t* count);
/* all_pass is set to 1 when the component is the unfiltered series. */
VMBPBB_API vmbpbb_status vmbpbb_result_component_info(const vmbpbb_result* result, size_t index,
                                                      int* period, vmbpbb_filter_spec* filter,
                                                      int* all_pass);
/* Arrays must hold n entries (vmbpbb_result_length). */
VMBPBB_API vmbpbb_status vmbpbb_result_component_band(const vmbpbb_result* result, size_t index,
                                                      double* lower, double* point,
                                                      double* upper);
/* resamples x period row-major matrix of resampled phase means. */
VMBPBB_API vmbpbb_status vmbpbb_result_component_estimates(const vmbpbb_result* result,
                                                           size_t index, double* buffer,
                                                           size_t capacity, size_t* length);
VMBPBB_API vmbpbb_status vmbpbb_result_aggregate_band(const vmbpbb_result* result, double* lower,
                                                      double* point, double* upper);
VMBPBB_API vmbpbb_status vmbpbb_result_warning_count(const vmbpbb_result* result, size_t* count);
/* Returned string lives as long as the result. */
VMBPBB_API vmbpbb_status vmbpbb_result_warning(const vmbpbb_result* result, size_t index,
                                               const char** message);

/* ---- simulation study -------------------------------------------------- */

typedef struct vmbpbb_scenario_config {
  int p1;
  int p2;
  double snr_signal;
  double snr_noise; /* noise variance = snr_noise / snr_signal; 0 = noiseless */
  size_t n;
  size_t resamples;
  size_t reps;
  uint64_t seed;
  double narrow_factor;
  double phase_offset;
  unsigned threads;
} vmbpbb_scenario_config;

typedef struct vmbpbb_scenario_metrics {
  double ci_ratio_median;
  double r2_vmbpbb;
  double r2_pbb;
  double r2_diff;
  double outside_frac_vmbpbb;
  double outside_frac_pbb;
  double r2_pooled_vmbpbb; /* NaN when rebuilt from repetition records */
  double r2_pooled_pbb;
  size_t reps_completed;
} vmbpbb_scenario_metrics;

typedef struct vmbpbb_repetition_record {
  size_t rep;
  double ci_ratio;
  double outside_vmbpbb;
  double outside_pbb;
  double r2_vmbpbb;
  double r2_pbb;
} vmbpbb_repetition_record;

typedef struct vmbpbb_grid_cell {
  int p1;
  int p2;
  double snr_signal;
  double snr_noise;
  double narrow_factor;
  int narrowed;
  vmbpbb_scenario_metrics metrics;
} vmbpbb_grid_cell;

/* Desk-scale defaults: p = (50, 100), SNR 1:10, n 1000, B 200, reps 50. */
VMBPBB_API void vmbpbb_scenario_config_init(vmbpbb_scenario_config* cfg);

/* Noise-free and noisy signals of repetition `rep` (each array holds cfg->n). */
VMBPBB_API vmbpbb_status vmbpbb_generate_mpc(const vmbpbb_scenario_config* cfg, size_t rep,
                                             double* observed, double* comp1, double* comp2);

VMBPBB_API vmbpbb_status vmbpbb_run_scenario(const vmbpbb_scenario_config* cfg,
                                             vmbpbb_scenario** out);
VMBPBB_API void vmbpbb_scenario_destroy(vmbpbb_scenario* scenario);
VMBPBB_API vmbpbb_status vmbpbb_scenario_metrics_get(const vmbpbb_scenario* scenario,
                                                     vmbpbb_scenario_metrics* metrics);
VMBPBB_API vmbpbb_status vmbpbb_scenario_repetition(const vmbpbb_scenario* scenario,
                                                    size_t index,
                                                    vmbpbb_repetition_record* record);
/* Elementwise median point curves across repetitions and the true signal;
 * each array holds n entries. */
VMBPBB_API vmbpbb_status vmbpbb_scenario_curves(const vmbpbb_scenario* scenario,
                                                double* median_vmbpbb, double* median_pbb,
                                                double* truth);

VMBPBB_API int vmbpbb_narrowing_rule_applies(int p1, int p2, double snr_signal,
                                              double snr_noise);
VMBPBB_API vmbpbb_status vmbpbb_run_grid(const int* periods, size_t period_count,
                                         const double* snr_signal, const double* snr_noise,
                                         size_t snr_count, const vmbpbb_scenario_config* base,
                                         int apply_narrowing_rule, vmbpbb_grid** out);
VMBPBB_API void vmbpbb_grid_destroy(vmbpbb_grid* grid);
VMBPBB_API vmbpbb_status vmbpbb_grid_cell_count(const vmbpbb_grid* grid, size_t* count);
VMBPBB_API vmbpbb_status vmbpbb_grid_cell_get(const vmbpbb_grid* grid, size_t index,
                                              vmbpbb_grid_cell* cell);
VMBPBB_API vmbpbb_status vmbpbb_grid_cell_repetition(const vmbpbb_grid* grid, size_t cell,
                                                     size_t rep,
                                                     vmbpbb_repetition_record* record);

/* Rebuilds metrics from per-repetition records (medians; pooled R^2 = NaN). */
VMBPBB_API vmbpbb_status vmbpbb_summarize_repetitions(const vmbpbb_repetition_record* records,
                                                      size_t count,
                                                      vmbpbb_scenario_metrics* metrics);

#ifdef __cplusplus
}
#endif

#endif /* VMBPBB_H */
