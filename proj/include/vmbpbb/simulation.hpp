// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "vmbpbb/bootstrap.hpp"
#include "vmbpbb/random.hpp"
#include "vmbpbb/series.hpp"

namespace vmbpbb {

/// Signal-to-noise "signal:noise"; noise variance is (noise / signal) times
/// the total signal power. noise = 0 gives the noiseless limit.
struct Snr {
  double signal = 1.0;
  double noise = 10.0;

  double noise_to_signal() const noexcept { return noise / signal; }
  bool operator==(const Snr&) const = default;
};

struct ScenarioConfig {
  int p1 = 50;
  int p2 = 100;
  Snr snr;
  std::size_t n = 1000;
  std::size_t resamples = 200;
  std::size_t reps = 50;
  SeedSpec seed;
  double narrow_factor = 1.0;
  double phase_offset = 0.0;  // radians, both components
  unsigned threads = 1;       // does not affect results
};

void validate(const ScenarioConfig& cfg);

struct TrueSignals {
  TimeSeries comp1;
  TimeSeries comp2;
  TimeSeries mpc;  // comp1 + comp2
  double noise_sigma = 0.0;
};

/// One cell of the comparison tables. r2 values are percentages.
struct ScenarioMetrics {
  double ci_ratio_median = 0.0;
  double r2_vmbpbb = 0.0;  // median over repetitions of the per-repetition R^2
  double r2_pbb = 0.0;
  double r2_diff = 0.0;    // r2_vmbpbb - r2_pbb
  double outside_frac_vmbpbb = 0.0;
  double outside_frac_pbb = 0.0;
  // R^2 of the elementwise median point curve across repetitions.
  // NaN when only per-repetition records are available.
  double r2_pooled_vmbpbb = 0.0;
  double r2_pooled_pbb = 0.0;
  std::size_t reps_completed = 0;

  bool operator==(const ScenarioMetrics&) const = default;
};

/// Per-repetition measurements; enough to rebuild ScenarioMetrics except
/// for the pooled R^2 values.
struct RepetitionRecord {
  std::size_t rep = 0;
  double ci_ratio = 0.0;
  double outside_vmbpbb = 0.0;
  double outside_pbb = 0.0;
  double r2_vmbpbb = 0.0;
  double r2_pbb = 0.0;

  bool operator==(const RepetitionRecord&) const = default;
};

struct ScenarioOutcome {
  ScenarioMetrics metrics;
  std::vector<RepetitionRecord> repetitions;
  std::vector<double> median_point_vmbpbb;
  std::vector<double> median_point_pbb;
  std::vector<double> truth;
};

/// Labels identifying a scenario's random streams. Depends on the unordered
/// period pair and the SNR only, so swapping p1 and p2 or changing the
/// narrowing factor reuses the same data and resampling streams.
SeedSpec scenario_seed(const ScenarioConfig& cfg);

/// Data stream of repetition `rep`; the resampling streams of the same
/// repetition are derived from scenario_seed(cfg).with_label(rep).
RandomStream repetition_data_stream(const ScenarioConfig& cfg, std::size_t rep);

std::pair<TimeSeries, TrueSignals> generate_mpc(const ScenarioConfig& cfg, RandomStream& rng);

double median(std::vector<double> values);

/// Median over t of the PBB / VMBPBB band-width ratio.
double ci_ratio(const CIBand& band_pbb, const CIBand& band_vm);

/// Squared Pearson correlation (percent) between the elementwise median of
/// the point curves and the truth.
double r2_against_truth(std::span<const std::vector<double>> point_estimates,
                        std::span<const double> truth);

/// Fraction of t with truth(t) strictly outside [lower(t), upper(t)].
double outside_fraction(const CIBand& band, std::span<const double> truth);

ScenarioMetrics summarize_repetitions(std::span<const RepetitionRecord> records);

ScenarioOutcome run_scenario(const ScenarioConfig& cfg);

/// Narrowing rule for the {10, 25} pair at SNR 1:2 and 1:5.
bool narrowing_rule_applies(int p1, int p2, const Snr& snr);

struct GridCell {
  int p1 = 0;
  int p2 = 0;
  Snr snr;
  double narrow_factor = 1.0;
  bool narrowed = false;
  ScenarioMetrics metrics;
  std::vector<RepetitionRecord> repetitions;
};

/// One cell per unordered pair of distinct periods per SNR, in
/// (snr, i, j > i) order. With apply_narrowing_rule, narrow_factor = 2 is applied
/// wherever narrowing_rule_applies.
std::vector<GridCell> run_grid(std::span<const int> periods, std::span<const Snr> snrs,
                               const ScenarioConfig& base, bool apply_narrowing_rule);

}  // namespace vmbpbb
