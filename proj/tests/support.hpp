// SPDX-License-Identifier: Apache-2.0
// Small helpers shared by the core unit tests.
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "vmbpbb/random.hpp"
#include "vmbpbb/series.hpp"

namespace testing {

inline std::vector<double> sine(std::size_t n, double period, double amplitude = 1.0) {
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    out[t] = amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period);
  }
  return out;
}

inline std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  vmbpbb::RandomStream rng(vmbpbb::SeedSpec{seed, {}});
  std::vector<double> out(n);
  for (auto& v : out) v = rng.normal();
  return out;
}

/// RMS of a - b over [lo, hi).
template <typename A, typename B>
double rms_diff(const A& a, const B& b, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s / static_cast<double>(hi - lo));
}

template <typename A>
double rms(const A& a, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += a[i] * a[i];
  return std::sqrt(s / static_cast<double>(hi - lo));
}

}  // namespace testing
