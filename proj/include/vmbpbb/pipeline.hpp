// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vmbpbb/bootstrap.hpp"
#include "vmbpbb/kz_filter.hpp"
#include "vmbpbb/random.hpp"
#include "vmbpbb/series.hpp"

namespace vmbpbb {

/// vmbpbb: bandpass each component before bootstrapping it.
/// pbb: bootstrap the original series at every period (all-pass filters).
enum class Mode { vmbpbb, pbb };

const char* mode_name(Mode mode) noexcept;

struct PipelineConfig {
  std::vector<int> periods;
  std::size_t resamples = 1000;
  SeedSpec seed;
  double narrow_factor = 1.0;
  EdgePolicy edge = EdgePolicy::renormalize;
  Mode mode = Mode::vmbpbb;
  double alpha = 0.05;
  unsigned threads = 1;  // does not affect results
};

struct ComponentResult {
  int period = 0;
  std::optional<FilterSpec> filter;  // nullopt: all-pass
  TimeSeries component_series;
  BootstrapRun run;
  CIBand band;  // length n, cyclic extension of the per-phase band
};

struct MpcResult {
  std::vector<ComponentResult> components;  // in cfg.periods order
  TimeSeries aggregate_point;
  CIBand aggregate_band;
  Mode mode = Mode::vmbpbb;
  std::vector<std::string> warnings;
};

/// Bandpass components, one per period, same length and alignment as the
/// input under the renormalize policy.
std::vector<TimeSeries> decompose(const TimeSeries& series, std::span<const int> periods,
                                  double narrow_factor = 1.0,
                                  EdgePolicy edge = EdgePolicy::renormalize);

/// Substream for one component, keyed by its period rather than its position.
SeedSpec component_seed(const SeedSpec& seed, std::int64_t component_label);

/// Bootstraps already-separated components at their periods and sums the
/// per-resample periodic-mean trajectories. `filters[i]` is recorded as-is.
MpcResult aggregate_components(std::vector<TimeSeries> components,
                               std::vector<std::optional<FilterSpec>> filters,
                               const PipelineConfig& cfg);

MpcResult run_pipeline(const TimeSeries& series, const PipelineConfig& cfg);

}  // namespace vmbpbb
