// SPDX-License-Identifier: Apache-2.0
#include "vmbpbb/vmbpbb.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "vmbpbb/error.hpp"
#include "vmbpbb/kz_filter.hpp"
#include "vmbpbb/pipeline.hpp"
#include "vmbpbb/series.hpp"
#include "vmbpbb/simulation.hpp"
#include "vmbpbb/version.hpp"

struct vmbpbb_series {
  vmbpbb::TimeSeries value;
};

struct vmbpbb_result {
  vmbpbb::MpcResult value;
};

struct vmbpbb_scenario {
  vmbpbb::ScenarioOutcome value;
};

struct vmbpbb_grid {
  std::vector<vmbpbb::GridCell> cells;
};

namespace {

thread_local std::string last_error;

vmbpbb_status to_status(vmbpbb::ErrorCode code) {
  using vmbpbb::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return VMBPBB_ERR_INVALID_ARGUMENT;
    case ErrorCode::invalid_period: return VMBPBB_ERR_INVALID_PERIOD;
    case ErrorCode::series_too_short: return VMBPBB_ERR_SERIES_TOO_SHORT;
    case ErrorCode::degenerate_separation: return VMBPBB_ERR_DEGENERATE_SEPARATION;
    case ErrorCode::insufficient_resamples: return VMBPBB_ERR_INSUFFICIENT_RESAMPLES;
    case ErrorCode::degenerate_band: return VMBPBB_ERR_DEGENERATE_BAND;
    case ErrorCode::undefined_correlation: return VMBPBB_ERR_UNDEFINED_CORRELATION;
    case ErrorCode::undefined_cutoff: return VMBPBB_ERR_UNDEFINED_CUTOFF;
    case ErrorCode::config: return VMBPBB_ERR_CONFIG;
    case ErrorCode::parse:
    case ErrorCode::io: return VMBPBB_ERR_INVALID_ARGUMENT;
  }
  return VMBPBB_ERR_INTERNAL;
}

vmbpbb_status fail(vmbpbb_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
vmbpbb_status guarded(Body&& body) noexcept {
  try {
    last_error.clear();
    return body();
  } catch (const vmbpbb::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(VMBPBB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(VMBPBB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(VMBPBB_ERR_INTERNAL, "unknown exception");
  }
}

#define VMBPBB_REQUIRE(ptr)                                                    \
  do {                                                                         \
    if ((ptr) == nullptr) return fail(VMBPBB_ERR_NULL_POINTER, #ptr " is NULL"); \
  } while (0)

template <typename T>
vmbpbb_status copy_out(const std::vector<T>& src, T* buffer, size_t capacity, size_t* length) {
  VMBPBB_REQUIRE(length);
  *length = src.size();
  if (buffer == nullptr && capacity == 0) return VMBPBB_OK;
  if (capacity < src.size()) {
    return fail(VMBPBB_ERR_BUFFER_TOO_SMALL,
                "buffer holds " + std::to_string(capacity) + ", need " + std::to_string(src.size()));
  }
  VMBPBB_REQUIRE(buffer);
  std::copy(src.begin(), src.end(), buffer);
  return VMBPBB_OK;
}

vmbpbb::EdgePolicy to_edge(vmbpbb_edge_policy edge) {
  switch (edge) {
    case VMBPBB_EDGE_RENORMALIZE: return vmbpbb::EdgePolicy::renormalize;
    case VMBPBB_EDGE_TRUNCATE: return vmbpbb::EdgePolicy::truncate;
  }
  throw vmbpbb::Error(vmbpbb::ErrorCode::invalid_argument, "unknown edge policy");
}

vmbpbb::FilterSpec to_spec(vmbpbb_filter_spec s) { return {s.m, s.k, s.nu}; }
vmbpbb_filter_spec from_spec(const vmbpbb::FilterSpec& s) { return {s.m, s.k, s.nu}; }

vmbpbb::ScenarioConfig to_scenario(const vmbpbb_scenario_config& c) {
  vmbpbb::ScenarioConfig cfg;
  cfg.p1 = c.p1;
  cfg.p2 = c.p2;
  cfg.snr = {c.snr_signal, c.snr_noise};
  cfg.n = c.n;
  cfg.resamples = c.resamples;
  cfg.reps = c.reps;
  cfg.seed = vmbpbb::SeedSpec{c.seed, {}};
  cfg.narrow_factor = c.narrow_factor;
  cfg.phase_offset = c.phase_offset;
  cfg.threads = c.threads;
  return cfg;
}

vmbpbb_scenario_metrics from_metrics(const vmbpbb::ScenarioMetrics& m) {
  return {m.ci_ratio_median,   m.r2_vmbpbb,         m.r2_pbb,        m.r2_diff,
          m.outside_frac_vmbpbb, m.outside_frac_pbb, m.r2_pooled_vmbpbb, m.r2_pooled_pbb,
          m.reps_completed};
}

vmbpbb_repetition_record from_record(const vmbpbb::RepetitionRecord& r) {
  return {r.rep, r.ci_ratio, r.outside_vmbpbb, r.outside_pbb, r.r2_vmbpbb, r.r2_pbb};
}

vmbpbb::RepetitionRecord to_record(const vmbpbb_repetition_record& r) {
  return {r.rep, r.ci_ratio, r.outside_vmbpbb, r.outside_pbb, r.r2_vmbpbb, r.r2_pbb};
}

void copy_band(const vmbpbb::CIBand& band, double* lower, double* point, double* upper) {
  if (lower) std::copy(band.lower.begin(), band.lower.end(), lower);
  if (point) std::copy(band.point.begin(), band.point.end(), point);
  if (upper) std::copy(band.upper.begin(), band.upper.end(), upper);
}

}  // namespace

extern "C" {

const char* vmbpbb_version(void) { return vmbpbb::kVersion; }

const char* vmbpbb_last_error(void) { return last_error.c_str(); }

const char* vmbpbb_status_name(vmbpbb_status status) {
  switch (status) {
    case VMBPBB_OK: return "ok";
    case VMBPBB_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case VMBPBB_ERR_INVALID_PERIOD: return "invalid-period";
    case VMBPBB_ERR_SERIES_TOO_SHORT: return "series-too-short";
    case VMBPBB_ERR_DEGENERATE_SEPARATION: return "degenerate-separation";
    case VMBPBB_ERR_INSUFFICIENT_RESAMPLES: return "insufficient-resamples";
    case VMBPBB_ERR_DEGENERATE_BAND: return "degenerate-band";
    case VMBPBB_ERR_UNDEFINED_CORRELATION: return "undefined-correlation";
    case VMBPBB_ERR_UNDEFINED_CUTOFF: return "undefined-cutoff";
    case VMBPBB_ERR_CONFIG: return "config";
    case VMBPBB_ERR_NULL_POINTER: return "null-pointer";
    case VMBPBB_ERR_BUFFER_TOO_SMALL: return "buffer-too-small";
    case VMBPBB_ERR_OUT_OF_RANGE: return "out-of-range";
    case VMBPBB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

// ---- series ---------------------------------------------------------------

vmbpbb_status vmbpbb_series_create(const double* values, size_t n, int64_t start_index,
                                   vmbpbb_series** out) {
  return guarded([&] {
    VMBPBB_REQUIRE(out);
    *out = nullptr;
    if (n > 0) VMBPBB_REQUIRE(values);
    std::vector<double> v(values, values + n);
    *out = new vmbpbb_series{vmbpbb::TimeSeries(std::move(v), start_index)};
    return VMBPBB_OK;
  });
}

void vmbpbb_series_destroy(vmbpbb_series* series) { delete series; }

vmbpbb_status vmbpbb_series_length(const vmbpbb_series* series, size_t* n) {
  return guarded([&] {
    VMBPBB_REQUIRE(series);
    VMBPBB_REQUIRE(n);
    *n = series->value.size();
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_series_start_index(const vmbpbb_series* series, int64_t* start_index) {
  return guarded([&] {
    VMBPBB_REQUIRE(series);
    VMBPBB_REQUIRE(start_index);
    *start_index = series->value.start_index();
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_series_values(const vmbpbb_series* series, double* buffer, size_t capacity,
                                   size_t* length) {
  return guarded([&] {
    VMBPBB_REQUIRE(series);
    const auto v = series->value.values();
    return copy_out(std::vector<double>(v.begin(), v.end()), buffer, capacity, length);
  });
}

vmbpbb_status vmbpbb_periodic_mean(const vmbpbb_series* series, size_t period, double* means,
                                   size_t* counts) {
  return guarded([&] {
    VMBPBB_REQUIRE(series);
    VMBPBB_REQUIRE(means);
    const auto pm = vmbpbb::periodic_mean(series->value, period);
    std::copy(pm.means.begin(), pm.means.end(), means);
    if (counts) std::copy(pm.counts.begin(), pm.counts.end(), counts);
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_periodogram(const vmbpbb_series* series, double* frequencies, double* power,
                                 size_t capacity, size_t* length) {
  return guarded([&] {
    VMBPBB_REQUIRE(series);
    const auto spec = vmbpbb::periodogram(series->value);
    if (auto st = copy_out(spec.frequencies, frequencies, capacity, length); st != VMBPBB_OK) {
      return st;
    }
    return copy_out(spec.power, power, capacity, length);
  });
}

// ---- filters --------------------------------------------------------------

vmbpbb_status vmbpbb_kz_coefficients(int m, int k, double* weights, size_t capacity,
                                     size_t* length) {
  return guarded([&] {
    const auto table = vmbpbb::kz_coefficients(m, k);
    const auto w = table.weights();
    return copy_out(std::vector<double>(w.begin(), w.end()), weights, capacity, length);
  });
}

vmbpbb_status vmbpbb_kz_apply(const vmbpbb_series* series, int m, int k, vmbpbb_edge_policy edge,
                              vmbpbb_series** out) {
  return guarded([&] {
    VMBPBB_REQUIRE(series);
    VMBPBB_REQUIRE(out);
    *out = new vmbpbb_series{vmbpbb::kz_apply(series->value, m, k, to_edge(edge))};
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_kzft_apply(const vmbpbb_series* series, vmbpbb_filter_spec spec,
                                vmbpbb_edge_policy edge, double* real, double* imag,
                                size_t capacity, size_t* length, int64_t* start_index) {
  return guarded([&] {
    VMBPBB_REQUIRE(series);
    const auto cs = vmbpbb::kzft_apply(series->value, to_spec(spec), to_edge(edge));
    std::vector<double> re(cs.size()), im(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
      re[i] = cs[i].real();
      im[i] = cs[i].imag();
    }
    if (start_index) *start_index = cs.start_index();
    if (auto st = copy_out(re, real, capacity, length); st != VMBPBB_OK) return st;
    return copy_out(im, imag, capacity, length);
  });
}

vmbpbb_status vmbpbb_kzft_component(const vmbpbb_series* series, vmbpbb_filter_spec spec,
                                    vmbpbb_edge_policy edge, vmbpbb_series** out) {
  return guarded([&] {
    VMBPBB_REQUIRE(series);
    VMBPBB_REQUIRE(out);
    *out = new vmbpbb_series{vmbpbb::reconstruct_component(
        vmbpbb::kzft_apply(series->value, to_spec(spec), to_edge(edge)))};
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_energy_transfer(double lambda, int m, int k, double nu, double* energy) {
  return guarded([&] {
    VMBPBB_REQUIRE(energy);
    *energy = vmbpbb::energy_transfer(lambda, m, k, nu);
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_half_power_cutoff(int m, int k, double* offset) {
  return guarded([&] {
    VMBPBB_REQUIRE(offset);
    *offset = vmbpbb::half_power_cutoff(m, k);
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_select_filter_specs(const int* periods, size_t count, double narrow_factor,
                                         vmbpbb_filter_spec* specs) {
  return guarded([&] {
    VMBPBB_REQUIRE(periods);
    VMBPBB_REQUIRE(specs);
    const auto out = vmbpbb::select_filter_specs(std::span(periods, count), narrow_factor);
    std::transform(out.begin(), out.end(), specs, from_spec);
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_decompose(const vmbpbb_series* series, const int* periods, size_t count,
                               double narrow_factor, vmbpbb_edge_policy edge,
                               vmbpbb_series** components) {
  return guarded([&] {
    VMBPBB_REQUIRE(series);
    VMBPBB_REQUIRE(periods);
    VMBPBB_REQUIRE(components);
    auto parts = vmbpbb::decompose(series->value, std::span(periods, count), narrow_factor,
                                   to_edge(edge));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      components[i] = new vmbpbb_series{std::move(parts[i])};
    }
    return VMBPBB_OK;
  });
}

// ---- pipeline -------------------------------------------------------------

void vmbpbb_pipeline_config_init(vmbpbb_pipeline_config* cfg) {
  if (cfg == nullptr) return;
  *cfg = vmbpbb_pipeline_config{nullptr, 0, 1000, 0, 1.0, VMBPBB_EDGE_RENORMALIZE,
                                VMBPBB_MODE_VMBPBB, 0.05, 1};
}

vmbpbb_status vmbpbb_run_pipeline(const vmbpbb_series* series, const vmbpbb_pipeline_config* cfg,
                                  vmbpbb_result** out) {
  return guarded([&] {
    VMBPBB_REQUIRE(series);
    VMBPBB_REQUIRE(cfg);
    VMBPBB_REQUIRE(out);
    if (cfg->period_count > 0) VMBPBB_REQUIRE(cfg->periods);
    vmbpbb::PipelineConfig pc;
    pc.periods.assign(cfg->periods, cfg->periods + cfg->period_count);
    pc.resamples = cfg->resamples;
    pc.seed = vmbpbb::SeedSpec{cfg->seed, {}};
    pc.narrow_factor = cfg->narrow_factor;
    pc.edge = to_edge(cfg->edge);
    if (cfg->mode != VMBPBB_MODE_VMBPBB && cfg->mode != VMBPBB_MODE_PBB) {
      return fail(VMBPBB_ERR_INVALID_ARGUMENT, "unknown mode");
    }
    pc.mode = cfg->mode == VMBPBB_MODE_PBB ? vmbpbb::Mode::pbb : vmbpbb::Mode::vmbpbb;
    pc.alpha = cfg->alpha;
    pc.threads = cfg->threads;
    *out = new vmbpbb_result{vmbpbb::run_pipeline(series->value, pc)};
    return VMBPBB_OK;
  });
}

void vmbpbb_result_destroy(vmbpbb_result* result) { delete result; }

vmbpbb_status vmbpbb_result_length(const vmbpbb_result* result, size_t* n, int64_t* start_index) {
  return guarded([&] {
    VMBPBB_REQUIRE(result);
    if (n) *n = result->value.aggregate_point.size();
    if (start_index) *start_index = result->value.aggregate_point.start_index();
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_result_component_count(const vmbpbb_result* result, size_t* count) {
  return guarded([&] {
    VMBPBB_REQUIRE(result);
    VMBPBB_REQUIRE(count);
    *count = result->value.components.size();
    return VMBPBB_OK;
  });
}

#define VMBPBB_COMPONENT(result, index)                                           \
  if ((index) >= (result)->value.components.size())                               \
    return fail(VMBPBB_ERR_OUT_OF_RANGE, "component index " + std::to_string(index) + \
                                             " out of range");                       \
  const auto& comp = (result)->value.components[(index)]

vmbpbb_status vmbpbb_result_component_info(const vmbpbb_result* result, size_t index, int* period,
                                           vmbpbb_filter_spec* filter, int* all_pass) {
  return guarded([&] {
    VMBPBB_REQUIRE(result);
    VMBPBB_COMPONENT(result, index);
    if (period) *period = comp.period;
    if (all_pass) *all_pass = comp.filter.has_value() ? 0 : 1;
    if (filter) *filter = comp.filter ? from_spec(*comp.filter) : vmbpbb_filter_spec{1, 1, 0.0};
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_result_component_band(const vmbpbb_result* result, size_t index,
                                           double* lower, double* point, double* upper) {
  return guarded([&] {
    VMBPBB_REQUIRE(result);
    VMBPBB_COMPONENT(result, index);
    copy_band(comp.band, lower, point, upper);
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_result_component_estimates(const vmbpbb_result* result, size_t index,
                                                double* buffer, size_t capacity, size_t* length) {
  return guarded([&] {
    VMBPBB_REQUIRE(result);
    VMBPBB_COMPONENT(result, index);
    const auto data = comp.run.estimates.data();
    return copy_out(std::vector<double>(data.begin(), data.end()), buffer, capacity, length);
  });
}

vmbpbb_status vmbpbb_result_aggregate_band(const vmbpbb_result* result, double* lower,
                                           double* point, double* upper) {
  return guarded([&] {
    VMBPBB_REQUIRE(result);
    copy_band(result->value.aggregate_band, lower, point, upper);
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_result_warning_count(const vmbpbb_result* result, size_t* count) {
  return guarded([&] {
    VMBPBB_REQUIRE(result);
    VMBPBB_REQUIRE(count);
    *count = result->value.warnings.size();
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_result_warning(const vmbpbb_result* result, size_t index,
                                    const char** message) {
  return guarded([&] {
    VMBPBB_REQUIRE(result);
    VMBPBB_REQUIRE(message);
    if (index >= result->value.warnings.size()) {
      return fail(VMBPBB_ERR_OUT_OF_RANGE, "warning index out of range");
    }
    *message = result->value.warnings[index].c_str();
    return VMBPBB_OK;
  });
}

// ---- simulation -----------------------------------------------------------

void vmbpbb_scenario_config_init(vmbpbb_scenario_config* cfg) {
  if (cfg == nullptr) return;
  *cfg = vmbpbb_scenario_config{50, 100, 1.0, 10.0, 1000, 200, 50, 0, 1.0, 0.0, 1};
}

vmbpbb_status vmbpbb_generate_mpc(const vmbpbb_scenario_config* cfg, size_t rep, double* observed,
                                  double* comp1, double* comp2) {
  return guarded([&] {
    VMBPBB_REQUIRE(cfg);
    VMBPBB_REQUIRE(observed);
    const auto sc = to_scenario(*cfg);
    auto rng = vmbpbb::repetition_data_stream(sc, rep);
    const auto [series, signals] = vmbpbb::generate_mpc(sc, rng);
    std::copy(series.values().begin(), series.values().end(), observed);
    if (comp1) std::copy(signals.comp1.values().begin(), signals.comp1.values().end(), comp1);
    if (comp2) std::copy(signals.comp2.values().begin(), signals.comp2.values().end(), comp2);
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_run_scenario(const vmbpbb_scenario_config* cfg, vmbpbb_scenario** out) {
  return guarded([&] {
    VMBPBB_REQUIRE(cfg);
    VMBPBB_REQUIRE(out);
    *out = new vmbpbb_scenario{vmbpbb::run_scenario(to_scenario(*cfg))};
    return VMBPBB_OK;
  });
}

void vmbpbb_scenario_destroy(vmbpbb_scenario* scenario) { delete scenario; }

vmbpbb_status vmbpbb_scenario_metrics_get(const vmbpbb_scenario* scenario,
                                          vmbpbb_scenario_metrics* metrics) {
  return guarded([&] {
    VMBPBB_REQUIRE(scenario);
    VMBPBB_REQUIRE(metrics);
    *metrics = from_metrics(scenario->value.metrics);
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_scenario_repetition(const vmbpbb_scenario* scenario, size_t index,
                                         vmbpbb_repetition_record* record) {
  return guarded([&] {
    VMBPBB_REQUIRE(scenario);
    VMBPBB_REQUIRE(record);
    if (index >= scenario->value.repetitions.size()) {
      return fail(VMBPBB_ERR_OUT_OF_RANGE, "repetition index out of range");
    }
    *record = from_record(scenario->value.repetitions[index]);
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_scenario_curves(const vmbpbb_scenario* scenario, double* median_vmbpbb,
                                     double* median_pbb, double* truth) {
  return guarded([&] {
    VMBPBB_REQUIRE(scenario);
    const auto& v = scenario->value;
    if (median_vmbpbb) std::copy(v.median_point_vmbpbb.begin(), v.median_point_vmbpbb.end(), median_vmbpbb);
    if (median_pbb) std::copy(v.median_point_pbb.begin(), v.median_point_pbb.end(), median_pbb);
    if (truth) std::copy(v.truth.begin(), v.truth.end(), truth);
    return VMBPBB_OK;
  });
}

int vmbpbb_narrowing_rule_applies(int p1, int p2, double snr_signal, double snr_noise) {
  return vmbpbb::narrowing_rule_applies(p1, p2, vmbpbb::Snr{snr_signal, snr_noise}) ? 1 : 0;
}

vmbpbb_status vmbpbb_run_grid(const int* periods, size_t period_count, const double* snr_signal,
                              const double* snr_noise, size_t snr_count,
                              const vmbpbb_scenario_config* base, int apply_narrowing_rule,
                              vmbpbb_grid** out) {
  return guarded([&] {
    VMBPBB_REQUIRE(periods);
    VMBPBB_REQUIRE(snr_signal);
    VMBPBB_REQUIRE(snr_noise);
    VMBPBB_REQUIRE(base);
    VMBPBB_REQUIRE(out);
    std::vector<vmbpbb::Snr> snrs(snr_count);
    for (std::size_t i = 0; i < snr_count; ++i) snrs[i] = {snr_signal[i], snr_noise[i]};
    auto cells = vmbpbb::run_grid(std::span(periods, period_count), snrs, to_scenario(*base),
                                  apply_narrowing_rule != 0);
    *out = new vmbpbb_grid{std::move(cells)};
    return VMBPBB_OK;
  });
}

void vmbpbb_grid_destroy(vmbpbb_grid* grid) { delete grid; }

vmbpbb_status vmbpbb_grid_cell_count(const vmbpbb_grid* grid, size_t* count) {
  return guarded([&] {
    VMBPBB_REQUIRE(grid);
    VMBPBB_REQUIRE(count);
    *count = grid->cells.size();
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_grid_cell_get(const vmbpbb_grid* grid, size_t index, vmbpbb_grid_cell* cell) {
  return guarded([&] {
    VMBPBB_REQUIRE(grid);
    VMBPBB_REQUIRE(cell);
    if (index >= grid->cells.size()) return fail(VMBPBB_ERR_OUT_OF_RANGE, "cell index out of range");
    const auto& c = grid->cells[index];
    *cell = vmbpbb_grid_cell{c.p1,          c.p2,          c.snr.signal,         c.snr.noise,
                             c.narrow_factor, c.narrowed ? 1 : 0, from_metrics(c.metrics)};
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_grid_cell_repetition(const vmbpbb_grid* grid, size_t cell, size_t rep,
                                          vmbpbb_repetition_record* record) {
  return guarded([&] {
    VMBPBB_REQUIRE(grid);
    VMBPBB_REQUIRE(record);
    if (cell >= grid->cells.size()) return fail(VMBPBB_ERR_OUT_OF_RANGE, "cell index out of range");
    const auto& reps = grid->cells[cell].repetitions;
    if (rep >= reps.size()) return fail(VMBPBB_ERR_OUT_OF_RANGE, "repetition index out of range");
    *record = from_record(reps[rep]);
    return VMBPBB_OK;
  });
}

vmbpbb_status vmbpbb_summarize_repetitions(const vmbpbb_repetition_record* records, size_t count,
                                           vmbpbb_scenario_metrics* metrics) {
  return guarded([&] {
    VMBPBB_REQUIRE(records);
    VMBPBB_REQUIRE(metrics);
    std::vector<vmbpbb::RepetitionRecord> recs(count);
    std::transform(records, records + count, recs.begin(), to_record);
    *metrics = from_metrics(vmbpbb::summarize_repetitions(recs));
    return VMBPBB_OK;
  });
}

}  // extern "C"
