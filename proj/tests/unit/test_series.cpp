// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numbers>

#include "support.hpp"
#include "vmbpbb/error.hpp"
#include "vmbpbb/series.hpp"

using namespace vmbpbb;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::io;
}

// Textbook O(n^2) DFT periodogram at j/n, j = 0..n/2.
std::vector<double> dft_power(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> power(n / 2 + 1);
  for (std::size_t j = 0; j < power.size(); ++j) {
    std::complex<double> acc{};
    for (std::size_t t = 0; t < n; ++t) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(j * t % n) / static_cast<double>(n);
      acc += x[t] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    power[j] = std::norm(acc) / static_cast<double>(n);
  }
  return power;
}

}  // namespace

TEST_CASE("time series rejects empty and non-finite input") {
  CHECK(code_of([] { TimeSeries s({}); }) == ErrorCode::series_too_short);
  CHECK(code_of([] { TimeSeries s({1.0, std::nan("")}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { TimeSeries s({1.0, INFINITY}); }) == ErrorCode::invalid_argument);
  const TimeSeries s({1.0, 2.0}, -5);
  CHECK(s.start_index() == -5);
  CHECK(s.size() == 2);
}

TEST_CASE("periodic mean of small inputs") {
  const double c = 3.25;
  const auto constant = periodic_mean(TimeSeries({c, c, c, c}), 2);
  CHECK(constant.means == std::vector<double>{c, c});

  const auto pm = periodic_mean(TimeSeries({1, 2, 3, 4}), 2);
  CHECK(pm.period == 2);
  CHECK(pm.means == std::vector<double>{2, 3});
  CHECK(pm.counts == std::vector<std::size_t>{2, 2});

  // n not a multiple of p: phase 0 gets {1,3,5}, phase 1 gets {2,4}.
  const auto uneven = periodic_mean(TimeSeries({1, 2, 3, 4, 5}), 2);
  CHECK(uneven.means == std::vector<double>{3, 3});
  CHECK(uneven.counts == std::vector<std::size_t>{3, 2});
}

TEST_CASE("periodic mean of a noiseless sine recovers one cycle") {
  const auto pm = periodic_mean(TimeSeries(testing::sine(1000, 10)), 10);
  for (std::size_t s = 0; s < 10; ++s) {
    CHECK(std::abs(pm.means[s] - std::sin(2.0 * std::numbers::pi * s / 10.0)) <= 1e-12);
  }
}

TEST_CASE("periodic mean rejects periods outside 1..n") {
  const TimeSeries s({1, 2, 3});
  CHECK(code_of([&] { periodic_mean(s, 0); }) == ErrorCode::invalid_period);
  CHECK(code_of([&] { periodic_mean(s, 4); }) == ErrorCode::invalid_period);
  CHECK(periodic_mean(s, 3).means == std::vector<double>{1, 2, 3});
}

TEST_CASE("periodic mean is linear and its counts cover the series") {
  const auto x = testing::gaussian(997, 11);
  const auto y = testing::gaussian(997, 12);
  const double a = 1.7, b = -0.3;
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = a * x[i] + b * y[i];
  for (std::size_t p : {1u, 7u, 50u, 997u}) {
    const auto px = periodic_mean(TimeSeries(x), p);
    const auto py = periodic_mean(TimeSeries(y), p);
    const auto pz = periodic_mean(TimeSeries(z), p);
    std::size_t total = 0;
    for (std::size_t s = 0; s < p; ++s) {
      CHECK(std::abs(pz.means[s] - (a * px.means[s] + b * py.means[s])) <= 1e-12);
      total += pz.counts[s];
    }
    CHECK(total == x.size());
  }
}

TEST_CASE("extend_periodic tiles the phase means") {
  PeriodicMean pm{2, {2, 3}, {1, 1}};
  CHECK(extend_periodic(pm, 5).values().size() == 5);
  const auto tiled = extend_periodic(pm, 5, 7);
  CHECK(std::vector<double>(tiled.values().begin(), tiled.values().end()) == std::vector<double>{2, 3, 2, 3, 2});
  CHECK(tiled.start_index() == 7);

  PeriodicMean single{1, {4.5}, {1}};
  const auto flat = extend_periodic(single, 4);
  CHECK(std::vector<double>(flat.values().begin(), flat.values().end()) == std::vector<double>(4, 4.5));

  // A perfectly periodic series built from exact cycle values round-trips.
  const std::vector<double> cycle{0.5, -1.25, 3.0, 2.0};
  std::vector<double> periodic;
  for (int r = 0; r < 6; ++r) periodic.insert(periodic.end(), cycle.begin(), cycle.end());
  const TimeSeries s(periodic);
  CHECK(extend_periodic(periodic_mean(s, 4), s.size()) == s);
}

TEST_CASE("extend_periodic composed with periodic_mean is idempotent") {
  const TimeSeries s(testing::gaussian(103, 5));
  const auto first = periodic_mean(s, 9);
  const auto second = periodic_mean(extend_periodic(first, s.size()), 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(first.means[i] - second.means[i]) <= 1e-12);
}

TEST_CASE("periodogram finds single tones and DC") {
  const auto sp = periodogram(TimeSeries(testing::sine(1000, 50)));
  REQUIRE(sp.frequencies.size() == 501);
  const auto peak = std::max_element(sp.power.begin(), sp.power.end()) - sp.power.begin();
  CHECK(sp.frequencies[peak] == doctest::Approx(0.02));
  CHECK(std::all_of(sp.power.begin(), sp.power.end(), [](double p) { return p >= 0.0; }));

  const auto dc = periodogram(TimeSeries(std::vector<double>(64, 2.0)));
  CHECK(dc.power[0] == doctest::Approx(64.0 * 4.0));
  for (std::size_t j = 1; j < dc.power.size(); ++j) CHECK(dc.power[j] < 1e-20);
}

TEST_CASE("periodogram matches a direct DFT on two tones") {
  const auto x = testing::add(testing::sine(1000, 100), testing::sine(1000, 50));
  const auto sp = periodogram(TimeSeries(x));
  const auto oracle = dft_power(x);
  REQUIRE(sp.power.size() == oracle.size());
  for (std::size_t j = 0; j < oracle.size(); ++j) {
    CHECK(std::abs(sp.power[j] - oracle[j]) <= 1e-8 * (1.0 + oracle[j]));
  }
  // Two dominant bins, 0.01 and 0.02, of equal power n/4.
  std::vector<std::size_t> order(sp.power.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return sp.power[a] > sp.power[b]; });
  CHECK(std::min(order[0], order[1]) == 10);
  CHECK(std::max(order[0], order[1]) == 20);
  CHECK(sp.power[10] == doctest::Approx(sp.power[20]).epsilon(1e-9));
  CHECK(sp.power[10] == doctest::Approx(250.0).epsilon(1e-9));
}

TEST_CASE("periodogram ignores a constant shift except at zero frequency") {
  auto x = testing::gaussian(257, 3);
  const auto base = periodogram(TimeSeries(x));
  for (auto& v : x) v += 4.0;
  const auto shifted = periodogram(TimeSeries(x));
  CHECK(shifted.power[0] != doctest::Approx(base.power[0]));
  for (std::size_t j = 1; j < base.power.size(); ++j) {
    CHECK(std::abs(shifted.power[j] - base.power[j]) <= 1e-9 * (1.0 + base.power[j]));
  }
  CHECK(code_of([] { periodogram(TimeSeries({1.0})); }) == ErrorCode::series_too_short);
}
