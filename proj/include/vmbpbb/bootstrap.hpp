// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vmbpbb/random.hpp"
#include "vmbpbb/series.hpp"

namespace vmbpbb {

/// p exclusive, exhaustive subsets of 0..n-1; subset s holds the indices
/// congruent to s mod p, in increasing order.
struct PhasePartition {
  std::size_t period = 0;
  std::vector<std::vector<std::size_t>> subsets;
};

/// B x p table of resampled periodic means for one component.
struct BootstrapRun {
  std::size_t period = 0;
  std::size_t resamples = 0;
  Matrix estimates;  // row b: phase means of resample b
  SeedSpec seed;

  bool operator==(const BootstrapRun&) const = default;
};

/// Per-time-point interval between the alpha/2 and 1 - alpha/2 quantiles,
/// with the resample mean as the point estimate.
struct CIBand {
  std::vector<double> lower;
  std::vector<double> point;
  std::vector<double> upper;
  double alpha = 0.05;

  std::size_t size() const noexcept { return point.size(); }
  bool operator==(const CIBand&) const = default;
};

PhasePartition phase_partition(std::size_t n, std::size_t period);

/// One periodic block bootstrap resample: slot t draws uniformly, with
/// replacement, from the input values at phase t mod p.
TimeSeries pbb_resample(const TimeSeries& series, std::size_t period, RandomStream& rng);

/// B resamples; resample b uses the substream seed.with_label(b), so the
/// run is identical for any thread count.
BootstrapRun bootstrap_periodic_means(const TimeSeries& series, std::size_t period,
                                      std::size_t resamples, const SeedSpec& seed,
                                      unsigned threads = 1);

/// Empirical quantile, linear interpolation between order statistics at
/// 1-based rank h = (B-1)q + 1. `sorted` must be ascending.
double interpolated_quantile(std::span<const double> sorted, double q);

/// Band over the columns of `samples` (rows = resamples, cols = time).
CIBand ci_band(const Matrix& samples, double alpha = 0.05);

/// Cyclic extension of a per-phase band to length n.
CIBand extend_band(const CIBand& per_phase, std::size_t n);

}  // namespace vmbpbb
