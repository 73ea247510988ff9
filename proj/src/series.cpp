// SPDX-License-Identifier: Apache-2.0
#include "vmbpbb/series.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <string>

#include "vmbpbb/error.hpp"

namespace vmbpbb {

TimeSeries::TimeSeries(std::vector<double> values, std::int64_t start_index)
    : values_(std::move(values)), start_index_(start_index) {
  if (values_.empty()) {
    throw Error(ErrorCode::series_too_short, "time series must contain at least one sample");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::invalid_argument,
                  "non-finite sample at index " + std::to_string(i));
    }
  }
}

PeriodicMean periodic_mean(const TimeSeries& series, std::size_t period) {
  const std::size_t n = series.size();
  if (period < 1 || period > n) {
    throw Error(ErrorCode::invalid_period, "period " + std::to_string(period) +
                                               " outside [1, " + std::to_string(n) + "]");
  }
  PeriodicMean pm;
  pm.period = period;
  pm.means.assign(period, 0.0);
  pm.counts.assign(period, 0);
  const auto values = series.values();
  for (std::size_t i = 0; i < n; ++i) {
    pm.means[i % period] += values[i];
    ++pm.counts[i % period];
  }
  for (std::size_t s = 0; s < period; ++s) {
    pm.means[s] /= static_cast<double>(pm.counts[s]);
  }
  return pm;
}

TimeSeries extend_periodic(const PeriodicMean& pm, std::size_t n, std::int64_t start_index) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "extension length must be positive");
  if (pm.means.empty() || pm.means.size() != pm.period) {
    throw Error(ErrorCode::invalid_argument, "periodic mean has inconsistent period");
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = pm.means[i % pm.period];
  return TimeSeries(std::move(out), start_index);
}

namespace {
// FFTW's planner is not reentrant.
std::mutex fftw_planner_mutex;
}  // namespace

Spectrum periodogram(const TimeSeries& series) {
  const std::size_t n = series.size();
  if (n < 2) throw Error(ErrorCode::series_too_short, "periodogram needs at least 2 samples");

  const std::size_t bins = n / 2 + 1;
  std::vector<double> in(series.values().begin(), series.values().end());
  std::vector<std::complex<double>> out(bins);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex);
    fftw_destroy_plan(plan);
  }

  Spectrum spec;
  spec.frequencies.resize(bins);
  spec.power.resize(bins);
  for (std::size_t j = 0; j < bins; ++j) {
    spec.frequencies[j] = static_cast<double>(j) / static_cast<double>(n);
    spec.power[j] = std::norm(out[j]) / static_cast<double>(n);
  }
  return spec;
}

}  // namespace vmbpbb
