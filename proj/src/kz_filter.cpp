// SPDX-License-Identifier: Apache-2.0
#include "vmbpbb/kz_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "vmbpbb/error.hpp"

namespace vmbpbb {

namespace {

void require_window(int m, int k) {
  if (m < 1 || m % 2 == 0) {
    throw Error(ErrorCode::invalid_argument,
                "window length m must be an odd positive integer, got " + std::to_string(m));
  }
  if (k < 1) {
    throw Error(ErrorCode::invalid_argument,
                "iteration count k must be positive, got " + std::to_string(k));
  }
}

std::size_t support_half_width(int m, int k) {
  return static_cast<std::size_t>(k) * static_cast<std::size_t>(m - 1) / 2;
}

// Shared body of the direct-form KZ / KZFT filters. `taps[u + h]` already
// carries the modulation; `weights` are the real KZ weights used for edge
// renormalization.
template <typename In, typename Tap>
std::vector<decltype(In{} * Tap{})> apply_taps(std::span<const In> x,
                                               std::span<const double> weights,
                                               std::span<const Tap> taps, EdgePolicy edge,
                                               std::size_t& first_index) {
  using Out = decltype(In{} * Tap{});
  const std::size_t n = x.size();
  const std::size_t h = (weights.size() - 1) / 2;

  if (edge == EdgePolicy::truncate) {
    if (n <= 2 * h) {
      throw Error(ErrorCode::series_too_short,
                  "series of length " + std::to_string(n) +
                      " is too short for a full window of width " + std::to_string(2 * h + 1));
    }
    first_index = h;
    std::vector<Out> out(n - 2 * h);
    for (std::size_t t = h; t + h < n; ++t) {
      Out acc{};
      const In* xs = x.data() + (t - h);
      for (std::size_t j = 0; j < taps.size(); ++j) acc += xs[j] * taps[j];
      out[t - h] = acc;
    }
    return out;
  }

  // Prefix sums of the real weights give the in-range mass in O(1).
  std::vector<double> prefix(weights.size() + 1, 0.0);
  std::partial_sum(weights.begin(), weights.end(), prefix.begin() + 1);

  first_index = 0;
  std::vector<Out> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    // Tap index j covers offset u = j - h, input index t + j - h.
    const std::size_t j_lo = t >= h ? 0 : h - t;
    const std::size_t j_hi = std::min(2 * h, n - 1 + h - t);  // inclusive
    Out acc{};
    for (std::size_t j = j_lo; j <= j_hi; ++j) acc += x[t + j - h] * taps[j];
    if (j_lo == 0 && j_hi == 2 * h) {
      out[t] = acc;
    } else {
      out[t] = acc / (prefix[j_hi + 1] - prefix[j_lo]);
    }
  }
  return out;
}

std::vector<std::complex<double>> modulated_taps(const CoefficientTable& table, double nu) {
  const auto w = table.weights();
  const auto h = static_cast<std::ptrdiff_t>(table.half_width());
  std::vector<std::complex<double>> taps(w.size());
  for (std::ptrdiff_t u = -h; u <= h; ++u) {
    const double phase = -2.0 * std::numbers::pi * nu * static_cast<double>(u);
    taps[static_cast<std::size_t>(u + h)] = std::polar(w[static_cast<std::size_t>(u + h)], phase);
  }
  // nu = 0 must reduce to the real filter exactly.
  if (nu == 0.0) {
    for (std::size_t j = 0; j < w.size(); ++j) taps[j] = {w[j], 0.0};
  }
  return taps;
}

}  // namespace

std::size_t FilterSpec::half_width() const noexcept { return support_half_width(m, k); }

void validate(const FilterSpec& spec) {
  require_window(spec.m, spec.k);
  if (!(spec.nu >= 0.0 && spec.nu <= 0.5)) {
    throw Error(ErrorCode::invalid_argument,
                "centre frequency nu must lie in [0, 0.5], got " + std::to_string(spec.nu));
  }
}

CoefficientTable::CoefficientTable(int m, int k, std::vector<double> weights)
    : m_(m), k_(k), weights_(std::move(weights)) {
  require_window(m, k);
  if (weights_.size() != 2 * support_half_width(m, k) + 1) {
    throw Error(ErrorCode::invalid_argument, "coefficient table length does not match (m, k)");
  }
}

double CoefficientTable::weight(std::ptrdiff_t u) const {
  const auto h = static_cast<std::ptrdiff_t>(half_width());
  if (u < -h || u > h) return 0.0;
  return weights_[static_cast<std::size_t>(u + h)];
}

ComplexSeries::ComplexSeries(std::vector<std::complex<double>> values, std::int64_t start_index)
    : values_(std::move(values)), start_index_(start_index) {
  if (values_.empty()) {
    throw Error(ErrorCode::series_too_short, "complex series must contain at least one sample");
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::invalid_argument, "non-finite complex sample");
    }
  }
}

CoefficientTable kz_coefficients(int m, int k) {
  require_window(m, k);
  const std::size_t len = 2 * support_half_width(m, k) + 1;

  // m^k must fit in 128 bits for the integer path.
  const double log2_total = static_cast<double>(k) * std::log2(static_cast<double>(m));
  std::vector<double> weights(len);
  if (log2_total < 126.0) {
    __extension__ typedef unsigned __int128 u128;
    std::vector<u128> counts{1};
    for (int iter = 0; iter < k; ++iter) {
      std::vector<u128> next(counts.size() + static_cast<std::size_t>(m) - 1, 0);
      // Sliding window sum of width m.
      u128 window = 0;
      for (std::size_t r = 0; r < next.size(); ++r) {
        if (r < counts.size()) window += counts[r];
        if (r >= static_cast<std::size_t>(m)) window -= counts[r - static_cast<std::size_t>(m)];
        next[r] = window;
      }
      counts = std::move(next);
    }
    u128 total = 1;
    for (int iter = 0; iter < k; ++iter) total *= static_cast<u128>(m);
    const long double denom = static_cast<long double>(total);
    for (std::size_t r = 0; r < len; ++r) {
      weights[r] = static_cast<double>(static_cast<long double>(counts[r]) / denom);
    }
  } else {
    std::vector<double> acc{1.0};
    const double inv_m = 1.0 / static_cast<double>(m);
    for (int iter = 0; iter < k; ++iter) {
      std::vector<double> next(acc.size() + static_cast<std::size_t>(m) - 1, 0.0);
      for (std::size_t r = 0; r < acc.size(); ++r) {
        for (int j = 0; j < m; ++j) next[r + static_cast<std::size_t>(j)] += acc[r] * inv_m;
      }
      acc = std::move(next);
    }
    weights = std::move(acc);
  }
  return CoefficientTable(m, k, std::move(weights));
}

TimeSeries kz_apply(const TimeSeries& series, int m, int k, EdgePolicy edge) {
  const CoefficientTable table = kz_coefficients(m, k);
  std::size_t first = 0;
  auto out = apply_taps<double, double>(series.values(), table.weights(), table.weights(),
                                        edge, first);
  return TimeSeries(std::move(out), series.start_index() + static_cast<std::int64_t>(first));
}

TimeSeries kz_apply_iterated(const TimeSeries& series, int m, int k, EdgePolicy edge) {
  require_window(m, k);
  const std::size_t half = static_cast<std::size_t>(m - 1) / 2;
  if (edge == EdgePolicy::truncate && series.size() <= 2 * support_half_width(m, k)) {
    throw Error(ErrorCode::series_too_short, "series too short for a full KZ window");
  }
  std::vector<double> cur(series.values().begin(), series.values().end());
  std::int64_t start = series.start_index();
  for (int iter = 0; iter < k; ++iter) {
    const std::size_t n = cur.size();
    std::vector<double> prefix(n + 1, 0.0);
    std::partial_sum(cur.begin(), cur.end(), prefix.begin() + 1);
    std::vector<double> next;
    if (edge == EdgePolicy::truncate) {
      next.resize(n - 2 * half);
      for (std::size_t t = half; t + half < n; ++t) {
        next[t - half] = (prefix[t + half + 1] - prefix[t - half]) / static_cast<double>(m);
      }
      start += static_cast<std::int64_t>(half);
    } else {
      next.resize(n);
      for (std::size_t t = 0; t < n; ++t) {
        const std::size_t lo = t >= half ? t - half : 0;
        const std::size_t hi = std::min(n - 1, t + half);
        next[t] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
      }
    }
    cur = std::move(next);
  }
  return TimeSeries(std::move(cur), start);
}

ComplexSeries kzft_apply(const TimeSeries& series, const FilterSpec& spec, EdgePolicy edge) {
  validate(spec);
  const CoefficientTable table = kz_coefficients(spec.m, spec.k);
  const auto taps = modulated_taps(table, spec.nu);
  std::size_t first = 0;
  auto out = apply_taps<double, std::complex<double>>(
      series.values(), table.weights(), std::span<const std::complex<double>>(taps), edge, first);
  return ComplexSeries(std::move(out), series.start_index() + static_cast<std::int64_t>(first));
}

ComplexSeries kzft_apply(const ComplexSeries& series, const FilterSpec& spec, EdgePolicy edge) {
  validate(spec);
  const CoefficientTable table = kz_coefficients(spec.m, spec.k);
  const auto taps = modulated_taps(table, spec.nu);
  std::size_t first = 0;
  auto out = apply_taps<std::complex<double>, std::complex<double>>(
      series.values(), table.weights(), std::span<const std::complex<double>>(taps), edge, first);
  return ComplexSeries(std::move(out), series.start_index() + static_cast<std::int64_t>(first));
}

TimeSeries reconstruct_component(const ComplexSeries& cs) {
  std::vector<double> out(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) out[i] = 2.0 * cs[i].real();
  return TimeSeries(std::move(out), cs.start_index());
}

double energy_transfer(double lambda, int m, int k, double nu) {
  require_window(m, k);
  // Period 1 in the offset for odd m; fold into [-0.5, 0.5].
  double d = lambda - nu;
  d -= std::round(d);
  if (d == 0.0) return 1.0;
  const double ratio = std::sin(std::numbers::pi * static_cast<double>(m) * d) /
                       (static_cast<double>(m) * std::sin(std::numbers::pi * d));
  return std::pow(ratio * ratio, k);
}

double half_power_cutoff(int m, int k) {
  require_window(m, k);
  if (m == 1) {
    throw Error(ErrorCode::undefined_cutoff, "m = 1 is an all-pass filter with no cutoff");
  }
  const double half_root = std::pow(0.5, 1.0 / (2.0 * static_cast<double>(k)));
  const double md = static_cast<double>(m);
  return std::sqrt(6.0) / std::numbers::pi * std::sqrt((1.0 - half_root) / (md * md - half_root));
}

std::vector<FilterSpec> select_filter_specs(std::span<const int> periods, double narrow_factor) {
  if (periods.empty()) throw Error(ErrorCode::invalid_argument, "at least one period is required");
  if (!(narrow_factor >= 1.0) || !std::isfinite(narrow_factor)) {
    throw Error(ErrorCode::invalid_argument, "narrow_factor must be a finite value >= 1");
  }
  for (std::size_t i = 0; i < periods.size(); ++i) {
    if (periods[i] < 2) {
      throw Error(ErrorCode::invalid_period,
                  "period must be >= 2, got " + std::to_string(periods[i]));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (periods[i] == periods[j]) {
        throw Error(ErrorCode::degenerate_separation,
                    "duplicate period " + std::to_string(periods[i]));
      }
    }
  }

  std::vector<FilterSpec> specs;
  specs.reserve(periods.size());
  for (std::size_t i = 0; i < periods.size(); ++i) {
    const double pi_ = periods[i];
    // 2/d from exact integer products: 2 p_i p_j / |p_i - p_j| for the nearest
    // neighbour in frequency, or 2 p_i (distance to zero) for a lone period.
    double two_over_d = periods.size() == 1 ? 2.0 * pi_ : 0.0;
    for (std::size_t j = 0; j < periods.size(); ++j) {
      if (j == i) continue;
      const double pj = periods[j];
      two_over_d = std::max(two_over_d, 2.0 * pi_ * pj / std::abs(pi_ - pj));
    }
    const double target = narrow_factor * two_over_d;
    if (target >= static_cast<double>(std::numeric_limits<int>::max() - 2)) {
      throw Error(ErrorCode::invalid_argument, "filter window length overflows");
    }
    auto m = static_cast<int>(std::floor(target)) + 1;
    if (m % 2 == 0) ++m;
    specs.push_back(FilterSpec{m, 1, 1.0 / pi_});
  }
  return specs;
}

}  // namespace vmbpbb
