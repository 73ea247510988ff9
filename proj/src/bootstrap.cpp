// SPDX-License-Identifier: Apache-2.0
#include "vmbpbb/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vmbpbb/error.hpp"
#include "vmbpbb/parallel.hpp"

namespace vmbpbb {

namespace {

void require_period(std::size_t n, std::size_t period) {
  if (period < 1 || period > n) {
    throw Error(ErrorCode::invalid_period, "period " + std::to_string(period) +
                                               " outside [1, " + std::to_string(n) + "]");
  }
}

// Number of indices in [0, n) congruent to s mod p.
std::size_t phase_count(std::size_t n, std::size_t p, std::size_t s) {
  return (n - s + p - 1) / p;
}

}  // namespace

PhasePartition phase_partition(std::size_t n, std::size_t period) {
  require_period(n, period);
  PhasePartition part;
  part.period = period;
  part.subsets.resize(period);
  for (std::size_t s = 0; s < period; ++s) {
    auto& subset = part.subsets[s];
    subset.reserve(phase_count(n, period, s));
    for (std::size_t i = s; i < n; i += period) subset.push_back(i);
  }
  return part;
}

TimeSeries pbb_resample(const TimeSeries& series, std::size_t period, RandomStream& rng) {
  const std::size_t n = series.size();
  require_period(n, period);
  const auto x = series.values();
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t s = t % period;
    const std::size_t j = rng.uniform_index(phase_count(n, period, s));
    out[t] = x[s + j * period];
  }
  return TimeSeries(std::move(out), series.start_index());
}

BootstrapRun bootstrap_periodic_means(const TimeSeries& series, std::size_t period,
                                      std::size_t resamples, const SeedSpec& seed,
                                      unsigned threads) {
  const std::size_t n = series.size();
  require_period(n, period);
  if (resamples < 1) {
    throw Error(ErrorCode::insufficient_resamples, "at least one resample is required");
  }

  std::vector<std::size_t> counts(period);
  for (std::size_t s = 0; s < period; ++s) counts[s] = phase_count(n, period, s);

  BootstrapRun run;
  run.period = period;
  run.resamples = resamples;
  run.estimates = Matrix(resamples, period);
  run.seed = seed;

  const auto x = series.values();
  // Same draw sequence and summation order as
  // periodic_mean(pbb_resample(...)), without materializing the resample.
  parallel_for(resamples, threads, [&](std::size_t b) {
    RandomStream rng(seed.with_label(static_cast<std::int64_t>(b)));
    auto row = run.estimates.row(b);
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t s = t % period;
      row[s] += x[s + rng.uniform_index(counts[s]) * period];
    }
    for (std::size_t s = 0; s < period; ++s) row[s] /= static_cast<double>(counts[s]);
  });
  return run;
}

double interpolated_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error(ErrorCode::insufficient_resamples, "empty sample");
  const double h = static_cast<double>(sorted.size() - 1) * q;  // 0-based rank
  const double lo_rank = std::floor(h);
  const auto lo = static_cast<std::size_t>(lo_rank);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - lo_rank;
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

CIBand ci_band(const Matrix& samples, double alpha) {
  const std::size_t b_count = samples.rows();
  if (b_count < 2) {
    throw Error(ErrorCode::insufficient_resamples,
                "a confidence band needs at least 2 resamples, got " + std::to_string(b_count));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  }
  const std::size_t n = samples.cols();
  CIBand band;
  band.alpha = alpha;
  band.lower.resize(n);
  band.point.resize(n);
  band.upper.resize(n);

  std::vector<double> column(b_count);
  for (std::size_t t = 0; t < n; ++t) {
    double sum = 0.0;
    for (std::size_t b = 0; b < b_count; ++b) {
      column[b] = samples(b, t);
      sum += column[b];
    }
    std::sort(column.begin(), column.end());
    band.lower[t] = interpolated_quantile(column, alpha / 2.0);
    band.upper[t] = interpolated_quantile(column, 1.0 - alpha / 2.0);
    band.point[t] = sum / static_cast<double>(b_count);
  }
  return band;
}

CIBand extend_band(const CIBand& per_phase, std::size_t n) {
  const std::size_t p = per_phase.size();
  if (p == 0) throw Error(ErrorCode::invalid_argument, "cannot extend an empty band");
  CIBand out;
  out.alpha = per_phase.alpha;
  out.lower.resize(n);
  out.point.resize(n);
  out.upper.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    out.lower[t] = per_phase.lower[t % p];
    out.point[t] = per_phase.point[t % p];
    out.upper[t] = per_phase.upper[t % p];
  }
  return out;
}

}  // namespace vmbpbb
