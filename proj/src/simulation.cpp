// SPDX-License-Identifier: Apache-2.0
#include "vmbpbb/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vmbpbb/error.hpp"
#include "vmbpbb/parallel.hpp"
#include "vmbpbb/pipeline.hpp"

namespace vmbpbb {

namespace {

constexpr std::int64_t kDataStream = -1;

double component_value(int period, double phase, std::size_t t) {
  return std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period + phase);
}

struct RepOutput {
  RepetitionRecord record;
  std::vector<double> point_vm;
  std::vector<double> point_pbb;
};

double squared_correlation_percent(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<double>(a.size());
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) {
    throw Error(ErrorCode::undefined_correlation, "correlation undefined for a constant series");
  }
  const double r = sab / std::sqrt(saa * sbb);
  return 100.0 * r * r;
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
  if (cfg.p1 < 2 || cfg.p2 < 2) throw Error(ErrorCode::invalid_period, "periods must be >= 2");
  if (cfg.p1 == cfg.p2) {
    throw Error(ErrorCode::degenerate_separation, "scenario periods must differ");
  }
  if (cfg.n < 2 * static_cast<std::size_t>(std::max(cfg.p1, cfg.p2))) {
    throw Error(ErrorCode::series_too_short, "scenario length must cover two cycles of each period");
  }
  if (!(cfg.snr.signal > 0.0) || !(cfg.snr.noise >= 0.0) || !std::isfinite(cfg.snr.noise) ||
      !std::isfinite(cfg.snr.signal)) {
    throw Error(ErrorCode::invalid_argument, "SNR parts must be finite, signal > 0, noise >= 0");
  }
  if (cfg.resamples < 2) throw Error(ErrorCode::insufficient_resamples, "need at least 2 resamples");
  if (cfg.reps < 1) throw Error(ErrorCode::invalid_argument, "need at least one repetition");
  if (!(cfg.narrow_factor >= 1.0)) throw Error(ErrorCode::invalid_argument, "narrow_factor must be >= 1");
}

SeedSpec scenario_seed(const ScenarioConfig& cfg) {
  const auto snr_bits = std::bit_cast<std::int64_t>(cfg.snr.noise_to_signal());
  return cfg.seed.with_labels({std::min(cfg.p1, cfg.p2), std::max(cfg.p1, cfg.p2), snr_bits});
}

RandomStream repetition_data_stream(const ScenarioConfig& cfg, std::size_t rep) {
  return RandomStream(scenario_seed(cfg).with_labels({static_cast<std::int64_t>(rep), kDataStream}));
}

std::pair<TimeSeries, TrueSignals> generate_mpc(const ScenarioConfig& cfg, RandomStream& rng) {
  validate(cfg);
  // Two unit-amplitude sines: total power 2 * (1/2) = 1.
  constexpr double signal_power = 1.0;
  const double sigma = std::sqrt(cfg.snr.noise_to_signal() * signal_power);

  std::vector<double> c1(cfg.n), c2(cfg.n), mpc(cfg.n), observed(cfg.n);
  for (std::size_t t = 0; t < cfg.n; ++t) {
    c1[t] = component_value(cfg.p1, cfg.phase_offset, t);
    c2[t] = component_value(cfg.p2, cfg.phase_offset, t);
    mpc[t] = c1[t] + c2[t];
  }
  for (std::size_t t = 0; t < cfg.n; ++t) {
    const double noise = rng.normal();
    observed[t] = sigma > 0.0 ? mpc[t] + sigma * noise : mpc[t];
  }
  return {TimeSeries(std::move(observed)),
          TrueSignals{TimeSeries(std::move(c1)), TimeSeries(std::move(c2)),
                      TimeSeries(std::move(mpc)), sigma}};
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::invalid_argument, "median of an empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return lower + (upper - lower) / 2.0;
}

double ci_ratio(const CIBand& band_pbb, const CIBand& band_vm) {
  if (band_pbb.size() != band_vm.size() || band_vm.size() == 0) {
    throw Error(ErrorCode::invalid_argument, "bands must be non-empty and of equal length");
  }
  std::vector<double> ratios(band_vm.size());
  for (std::size_t t = 0; t < band_vm.size(); ++t) {
    const double vm_width = band_vm.upper[t] - band_vm.lower[t];
    if (!(vm_width > 0.0)) {
      throw Error(ErrorCode::degenerate_band,
                  "VMBPBB band has zero width at t = " + std::to_string(t));
    }
    ratios[t] = (band_pbb.upper[t] - band_pbb.lower[t]) / vm_width;
  }
  return median(std::move(ratios));
}

double r2_against_truth(std::span<const std::vector<double>> point_estimates,
                        std::span<const double> truth) {
  if (point_estimates.empty()) throw Error(ErrorCode::invalid_argument, "no point estimates");
  for (const auto& p : point_estimates) {
    if (p.size() != truth.size()) {
      throw Error(ErrorCode::invalid_argument, "point estimate length differs from truth");
    }
  }
  std::vector<double> pooled(truth.size());
  std::vector<double> column(point_estimates.size());
  for (std::size_t t = 0; t < truth.size(); ++t) {
    for (std::size_t r = 0; r < point_estimates.size(); ++r) column[r] = point_estimates[r][t];
    pooled[t] = median(column);
  }
  return squared_correlation_percent(pooled, truth);
}

double outside_fraction(const CIBand& band, std::span<const double> truth) {
  if (band.size() != truth.size() || truth.empty()) {
    throw Error(ErrorCode::invalid_argument, "band and truth must be non-empty and of equal length");
  }
  std::size_t outside = 0;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    if (truth[t] < band.lower[t] || truth[t] > band.upper[t]) ++outside;
  }
  return static_cast<double>(outside) / static_cast<double>(truth.size());
}

ScenarioMetrics summarize_repetitions(std::span<const RepetitionRecord> records) {
  if (records.empty()) throw Error(ErrorCode::invalid_argument, "no repetitions to summarize");
  auto collect = [&](double RepetitionRecord::*field) {
    std::vector<double> v;
    v.reserve(records.size());
    for (const auto& r : records) v.push_back(r.*field);
    return median(std::move(v));
  };
  ScenarioMetrics m;
  m.ci_ratio_median = collect(&RepetitionRecord::ci_ratio);
  m.r2_vmbpbb = collect(&RepetitionRecord::r2_vmbpbb);
  m.r2_pbb = collect(&RepetitionRecord::r2_pbb);
  m.r2_diff = m.r2_vmbpbb - m.r2_pbb;
  m.outside_frac_vmbpbb = collect(&RepetitionRecord::outside_vmbpbb);
  m.outside_frac_pbb = collect(&RepetitionRecord::outside_pbb);
  m.r2_pooled_vmbpbb = std::numeric_limits<double>::quiet_NaN();
  m.r2_pooled_pbb = std::numeric_limits<double>::quiet_NaN();
  m.reps_completed = records.size();
  return m;
}

ScenarioOutcome run_scenario(const ScenarioConfig& cfg) {
  validate(cfg);
  const SeedSpec base = scenario_seed(cfg);
  const std::vector<int> periods{cfg.p1, cfg.p2};

  std::vector<RepOutput> outputs(cfg.reps);
  std::vector<double> truth(cfg.n);
  for (std::size_t t = 0; t < cfg.n; ++t) truth[t] = component_value(cfg.p1, cfg.phase_offset, t) +
                                                     component_value(cfg.p2, cfg.phase_offset, t);

  parallel_for(cfg.reps, cfg.threads, [&](std::size_t r) {
    const auto rep = static_cast<std::int64_t>(r);
    RandomStream data_rng = repetition_data_stream(cfg, r);
    const auto [series, signals] = generate_mpc(cfg, data_rng);

    PipelineConfig pcfg;
    pcfg.periods = periods;
    pcfg.resamples = cfg.resamples;
    pcfg.seed = base.with_label(rep);
    pcfg.narrow_factor = cfg.narrow_factor;
    pcfg.threads = 1;

    pcfg.mode = Mode::vmbpbb;
    const MpcResult vm = run_pipeline(series, pcfg);
    pcfg.mode = Mode::pbb;
    const MpcResult pbb = run_pipeline(series, pcfg);

    const auto mpc = signals.mpc.values();
    RepOutput& out = outputs[r];
    out.point_vm.assign(vm.aggregate_point.values().begin(), vm.aggregate_point.values().end());
    out.point_pbb.assign(pbb.aggregate_point.values().begin(), pbb.aggregate_point.values().end());
    out.record.rep = r;
    out.record.ci_ratio = ci_ratio(pbb.aggregate_band, vm.aggregate_band);
    out.record.outside_vmbpbb = outside_fraction(vm.aggregate_band, mpc);
    out.record.outside_pbb = outside_fraction(pbb.aggregate_band, mpc);
    out.record.r2_vmbpbb = r2_against_truth(std::span(&out.point_vm, 1), mpc);
    out.record.r2_pbb = r2_against_truth(std::span(&out.point_pbb, 1), mpc);
  });

  ScenarioOutcome outcome;
  outcome.repetitions.reserve(cfg.reps);
  std::vector<std::vector<double>> points_vm, points_pbb;
  points_vm.reserve(cfg.reps);
  points_pbb.reserve(cfg.reps);
  for (auto& out : outputs) {
    outcome.repetitions.push_back(out.record);
    points_vm.push_back(std::move(out.point_vm));
    points_pbb.push_back(std::move(out.point_pbb));
  }
  outcome.metrics = summarize_repetitions(outcome.repetitions);
  outcome.metrics.r2_pooled_vmbpbb = r2_against_truth(points_vm, truth);
  outcome.metrics.r2_pooled_pbb = r2_against_truth(points_pbb, truth);

  auto elementwise_median = [&](const std::vector<std::vector<double>>& points) {
    std::vector<double> out(truth.size());
    std::vector<double> column(points.size());
    for (std::size_t t = 0; t < truth.size(); ++t) {
      for (std::size_t r = 0; r < points.size(); ++r) column[r] = points[r][t];
      out[t] = median(column);
    }
    return out;
  };
  outcome.median_point_vmbpbb = elementwise_median(points_vm);
  outcome.median_point_pbb = elementwise_median(points_pbb);
  outcome.truth = std::move(truth);
  return outcome;
}

bool narrowing_rule_applies(int p1, int p2, const Snr& snr) {
  const bool pair = (std::min(p1, p2) == 10 && std::max(p1, p2) == 25);
  const double ratio = snr.noise_to_signal();
  return pair && (ratio == 2.0 || ratio == 5.0);
}

std::vector<GridCell> run_grid(std::span<const int> periods, std::span<const Snr> snrs,
                               const ScenarioConfig& base, bool apply_narrowing_rule) {
  if (periods.size() < 2) throw Error(ErrorCode::config, "grid needs at least two periods");
  for (std::size_t i = 0; i < periods.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (periods[i] == periods[j]) {
        throw Error(ErrorCode::config, "duplicate grid period " + std::to_string(periods[i]));
      }
    }
  }
  if (snrs.empty()) throw Error(ErrorCode::config, "grid needs at least one SNR");

  std::vector<GridCell> cells;
  for (const Snr& snr : snrs) {
    for (std::size_t i = 0; i < periods.size(); ++i) {
      for (std::size_t j = i + 1; j < periods.size(); ++j) {
        ScenarioConfig cfg = base;
        cfg.p1 = periods[i];
        cfg.p2 = periods[j];
        cfg.snr = snr;
        const bool narrowed = apply_narrowing_rule && narrowing_rule_applies(cfg.p1, cfg.p2, snr);
        if (narrowed) cfg.narrow_factor = 2.0;
        ScenarioOutcome outcome = run_scenario(cfg);
        cells.push_back(GridCell{.p1 = cfg.p1,
                                 .p2 = cfg.p2,
                                 .snr = snr,
                                 .narrow_factor = cfg.narrow_factor,
                                 .narrowed = narrowed,
                                 .metrics = outcome.metrics,
                                 .repetitions = std::move(outcome.repetitions)});
      }
    }
  }
  return cells;
}

}  // namespace vmbpbb
