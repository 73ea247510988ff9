// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <complex>
#include <numbers>

#include "support.hpp"
#include "vmbpbb/error.hpp"
#include "vmbpbb/kz_filter.hpp"

using namespace vmbpbb;
using cplx = std::complex<double>;

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

// Integer counts of (1 + z + ... + z^{m-1})^k by repeated convolution.
std::vector<std::int64_t> convolution_counts(int m, int k) {
  std::vector<std::int64_t> acc{1};
  for (int it = 0; it < k; ++it) {
    std::vector<std::int64_t> next(acc.size() + m - 1, 0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      for (int j = 0; j < m; ++j) next[i + j] += acc[i];
    }
    acc = std::move(next);
  }
  return acc;
}

// Same counts by enumerating every k-tuple of offsets in [0, m).
std::vector<std::int64_t> enumeration_counts(int m, int k) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k * (m - 1) + 1), 0);
  std::vector<int> digits(k, 0);
  for (;;) {
    int sum = 0;
    for (int d : digits) sum += d;
    ++counts[sum];
    int pos = 0;
    while (pos < k && ++digits[pos] == m) digits[pos++] = 0;
    if (pos == k) break;
  }
  return counts;
}

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

std::vector<double> random_series(std::size_t n, std::uint64_t seed) { return testing::gaussian(n, seed); }

ComplexSeries exponential(std::size_t n, double lambda) {
  std::vector<cplx> v(n);
  for (std::size_t t = 0; t < n; ++t) v[t] = std::polar(1.0, 2.0 * std::numbers::pi * lambda * static_cast<double>(t));
  return ComplexSeries(std::move(v));
}

}  // namespace

TEST_CASE("kz coefficients: small cases") {
  const auto id = kz_coefficients(1, 4);
  REQUIRE(id.weights().size() == 1);
  CHECK(id.weights()[0] == 1.0);

  const auto ma = kz_coefficients(3, 1);
  for (double w : ma.weights()) CHECK(w == 1.0 / 3.0);

  const auto t32 = kz_coefficients(3, 2);
  const std::vector<double> expect{1.0 / 9, 2.0 / 9, 3.0 / 9, 2.0 / 9, 1.0 / 9};
  CHECK(std::vector<double>(t32.weights().begin(), t32.weights().end()) == expect);
  CHECK(t32.weight(-2) == 1.0 / 9);
  CHECK(t32.weight(0) == 3.0 / 9);
}

TEST_CASE("kz coefficients equal the integer convolution and enumeration oracles") {
  for (int m = 1; m <= 21; m += 2) {
    for (int k = 1; k <= 5; ++k) {
      const auto table = kz_coefficients(m, k);
      const auto counts = convolution_counts(m, k);
      REQUIRE(table.weights().size() == counts.size());
      CHECK(table.half_width() == static_cast<std::size_t>(k * (m - 1) / 2));
      const double denom = ipow(m, k);
      double sum = 0.0;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        CHECK(table.weights()[i] == static_cast<double>(counts[i]) / denom);
        CHECK(table.weights()[i] == table.weights()[counts.size() - 1 - i]);
        CHECK(table.weights()[i] > 0.0);
        sum += table.weights()[i];
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
  for (int m : {3, 5, 7}) {
    for (int k = 1; k <= 4; ++k) CHECK(convolution_counts(m, k) == enumeration_counts(m, k));
  }
}

TEST_CASE("kz coefficients for long windows still sum to one") {
  for (auto [m, k] : {std::pair{201, 5}, std::pair{401, 3}, std::pair{1001, 8}}) {
    const auto table = kz_coefficients(m, k);
    CHECK(table.weights().size() == static_cast<std::size_t>(k * (m - 1) + 1));
    double sum = 0.0;
    for (double w : table.weights()) sum += w;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("kz coefficients reject invalid arguments") {
  CHECK(code_of([] { kz_coefficients(4, 1); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { kz_coefficients(-1, 1); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { kz_coefficients(3, 0); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { validate(FilterSpec{5, 1, 0.6}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { validate(FilterSpec{5, 1, -0.1}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("renormalize preserves constants at every point") {
  const TimeSeries c(std::vector<double>(40, 2.5), 3);
  for (auto [m, k] : {std::pair{3, 1}, std::pair{5, 3}, std::pair{21, 2}}) {
    const auto out = kz_apply(c, m, k);
    CHECK(out.size() == c.size());
    CHECK(out.start_index() == 3);
    for (double v : out.values()) CHECK(std::abs(v - 2.5) <= 1e-12);
  }
}

TEST_CASE("a moving average over one full period cancels a sine") {
  const int m = 11;
  const TimeSeries s(testing::sine(200, m));
  const auto out = kz_apply(s, m, 1);
  for (std::size_t t = m / 2; t + m / 2 < s.size(); ++t) CHECK(std::abs(out[t]) <= 1e-10);
}

TEST_CASE("direct form matches a hand-rolled weighted sum and the iterated form") {
  const TimeSeries x(random_series(300, 21));
  for (auto [m, k] : {std::pair{3, 2}, std::pair{7, 3}, std::pair{21, 1}, std::pair{15, 4}}) {
    const auto w = kz_coefficients(m, k);
    const std::size_t h = w.half_width();
    const auto direct = kz_apply(x, m, k);
    const auto iterated = kz_apply_iterated(x, m, k);
    for (std::size_t t = h; t + h < x.size(); ++t) {
      double oracle = 0.0;
      for (std::size_t j = 0; j < w.weights().size(); ++j) oracle += w.weights()[j] * x[t - h + j];
      CHECK(std::abs(direct[t] - oracle) <= 1e-12);
      CHECK(std::abs(iterated[t] - oracle) <= 1e-10);
    }
  }
  // (3,2) against two passes of (3,1).
  const auto twice = kz_apply(kz_apply(x, 3, 1), 3, 1);
  const auto once = kz_apply(x, 3, 2);
  for (std::size_t t = 2; t + 2 < x.size(); ++t) CHECK(std::abs(twice[t] - once[t]) <= 1e-12);
}

TEST_CASE("truncate keeps full windows only") {
  const TimeSeries x(random_series(50, 4), 10);
  const auto full = kz_apply(x, 5, 2);
  const auto cut = kz_apply(x, 5, 2, EdgePolicy::truncate);
  CHECK(cut.size() == 50 - 8);
  CHECK(cut.start_index() == 14);
  for (std::size_t i = 0; i < cut.size(); ++i) CHECK(std::abs(cut[i] - full[i + 4]) <= 1e-12);

  const auto iter_cut = kz_apply_iterated(x, 5, 2, EdgePolicy::truncate);
  CHECK(iter_cut.size() == cut.size());
  CHECK(iter_cut.start_index() == cut.start_index());

  CHECK(code_of([] { kz_apply(TimeSeries(std::vector<double>(8, 1.0)), 5, 2, EdgePolicy::truncate); }) ==
        ErrorCode::series_too_short);
  CHECK(kz_apply(TimeSeries(std::vector<double>(9, 1.0)), 5, 2, EdgePolicy::truncate).size() == 1);
}

TEST_CASE("kzft at nu = 0 reduces to the real KZ filter") {
  const TimeSeries x(random_series(120, 8));
  for (auto edge : {EdgePolicy::renormalize, EdgePolicy::truncate}) {
    const auto z = kzft_apply(x, FilterSpec{9, 2, 0.0}, edge);
    const auto r = kz_apply(x, 9, 2, edge);
    REQUIRE(z.size() == r.size());
    CHECK(z.start_index() == r.start_index());
    for (std::size_t t = 0; t < z.size(); ++t) {
      CHECK(z[t].imag() == 0.0);
      CHECK(std::abs(z[t].real() - r[t]) <= 1e-12);
    }
  }
}

TEST_CASE("kzft passes its own centre frequency unchanged") {
  const double nu = 0.05;
  const auto in = exponential(400, nu);
  const FilterSpec spec{41, 3, nu};
  const auto out = kzft_apply(in, spec);
  const std::size_t h = spec.half_width();
  for (std::size_t t = h; t + h < in.size(); ++t) CHECK(std::abs(out[t] - in[t]) <= 1e-10);
}

TEST_CASE("kzft nulls a cosine whose lines sit on transfer zeros") {
  // Filter at 3/21; the cosine's lines at +-4/21 are 1/21 and 7/21 away,
  // both multiples of 1/m for m = 21.
  const int m = 21;
  const double nu1 = 3.0 / m, nu2 = 4.0 / m;
  std::vector<double> x(400);
  for (std::size_t t = 0; t < x.size(); ++t) x[t] = std::cos(2.0 * std::numbers::pi * nu2 * static_cast<double>(t));
  const auto out = kzft_apply(TimeSeries(x), FilterSpec{m, 1, nu1});
  for (std::size_t t = m / 2; t + m / 2 < x.size(); ++t) CHECK(std::abs(out[t]) <= 1e-6);
}

TEST_CASE("measured attenuation matches the analytic transfer") {
  for (int m : {5, 11, 21, 41, 81, 201}) {
    for (int k = 1; k <= 3; ++k) {
      const double nu = 0.1;
      const FilterSpec spec{m, k, nu};
      const std::size_t h = spec.half_width();
      for (double offset : {0.25 / m, 0.5 / m, 0.8 / m, 1.5 / m}) {
        const double lambda = nu + offset;
        const auto out = kzft_apply(exponential(2 * h + 40, lambda), spec);
        const double expected = std::sqrt(energy_transfer(lambda, m, k, nu));
        for (std::size_t t = h; t + h < out.size(); t += 7) {
          CHECK(std::abs(std::abs(out[t]) - expected) <= 0.01 * expected);
        }
      }
    }
  }
}

TEST_CASE("reconstruct_component") {
  const auto zero = reconstruct_component(kzft_apply(TimeSeries(std::vector<double>(30, 0.0)), FilterSpec{5, 1, 0.2}));
  for (double v : zero.values()) CHECK(v == 0.0);

  const TimeSeries x(random_series(60, 2));
  const auto doubled = reconstruct_component(kzft_apply(x, FilterSpec{5, 2, 0.0}));
  const auto smooth = kz_apply(x, 5, 2);
  for (std::size_t t = 0; t < x.size(); ++t) CHECK(doubled[t] == 2.0 * smooth[t]);

  // A unit cosine at the centre comes back with unit amplitude.
  const double nu = 0.02;
  std::vector<double> c(1000);
  for (std::size_t t = 0; t < c.size(); ++t) c[t] = std::cos(2.0 * std::numbers::pi * nu * static_cast<double>(t));
  const auto rec = reconstruct_component(kzft_apply(TimeSeries(c), FilterSpec{201, 1, nu}));
  double peak = 0.0;
  for (std::size_t t = 100; t < 900; ++t) peak = std::max(peak, std::abs(rec[t]));
  CHECK(peak == doctest::Approx(1.0).epsilon(0.05));
  CHECK(testing::rms_diff(rec.values(), c, 100, 900) <= 0.05);
}

TEST_CASE("energy transfer closed form") {
  for (int m : {1, 3, 5, 201}) {
    for (int k = 1; k <= 5; ++k) {
      CHECK(energy_transfer(0.13, m, k, 0.13) == 1.0);
      CHECK(energy_transfer(1.13, m, k, 0.13) == doctest::Approx(1.0));
      if (m > 1) CHECK(energy_transfer(0.1 + 1.0 / m, m, k, 0.1) <= 1e-15);
    }
  }
  CHECK(energy_transfer(0.5, 3, 1, 0.0) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  // Symmetric about the centre.
  for (double lambda : {0.0, 0.03, 0.11, 0.4}) {
    CHECK(energy_transfer(lambda, 11, 2, 0.07) == doctest::Approx(energy_transfer(0.14 - lambda, 11, 2, 0.07)).epsilon(1e-12));
  }
  // Independent evaluation at an arbitrary point.
  const double d = 0.0371;
  const double g = std::sin(std::numbers::pi * 21 * d) / (21 * std::sin(std::numbers::pi * d));
  CHECK(energy_transfer(0.2 + d, 21, 3, 0.2) == doctest::Approx(std::pow(g, 6)).epsilon(1e-12));
}

TEST_CASE("half power cutoff") {
  const auto closed = [](int m, int k) {
    const double c = std::pow(0.5, 1.0 / (2.0 * k));
    return std::sqrt(6.0) / std::numbers::pi * std::sqrt((1.0 - c) / (static_cast<double>(m) * m - c));
  };
  CHECK(half_power_cutoff(5, 1) == doctest::Approx(closed(5, 1)).epsilon(1e-14));
  CHECK(half_power_cutoff(5, 1) == doctest::Approx(0.0857).epsilon(0.01));
  const double e5 = energy_transfer(half_power_cutoff(5, 1), 5, 1, 0.0);
  CHECK(e5 >= 0.45);
  CHECK(e5 <= 0.55);
  // The closed form gives 0.0020994 here; see README on the rounded value.
  CHECK(half_power_cutoff(201, 1) == doctest::Approx(closed(201, 1)).epsilon(1e-14));
  CHECK(half_power_cutoff(201, 1) == doctest::Approx(0.0020994).epsilon(1e-4));
  for (int k = 1; k < 5; ++k) CHECK(half_power_cutoff(5, k + 1) < half_power_cutoff(5, k));
  CHECK(code_of([] { half_power_cutoff(1, 1); }) == ErrorCode::undefined_cutoff);
}

TEST_CASE("automatic filter design") {
  const std::vector<int> pair{50, 100};
  const auto specs = select_filter_specs(pair);
  REQUIRE(specs.size() == 2);
  CHECK(specs[0] == FilterSpec{201, 1, 0.02});
  CHECK(specs[1] == FilterSpec{201, 1, 0.01});

  const std::vector<int> small{10, 25};
  CHECK(select_filter_specs(small)[0].m == 35);
  CHECK(select_filter_specs(small, 2.0)[0].m == 67);
  CHECK(select_filter_specs(small, 2.0)[1].m == 67);

  const std::vector<int> single{100};
  const auto one = select_filter_specs(single);
  CHECK(one[0] == FilterSpec{201, 1, 0.01});
  CHECK(energy_transfer(0.0, 201, 1, 0.01) < 0.5);

  // 2 / |1/3 - 1/5| = 15 exactly; "strictly larger" gives 17.
  const std::vector<int> tie{3, 5};
  CHECK(select_filter_specs(tie)[0].m == 17);
  CHECK(select_filter_specs(pair, 1.5)[0].m == 301);

  // Three periods: each uses its nearest neighbour in frequency.
  const std::vector<int> three{10, 25, 50};
  const auto t3 = select_filter_specs(three);
  CHECK(t3[0].m == 35);  // d = 0.06 -> 33.3
  CHECK(t3[1].m == 101); // d = 0.02 -> 100
  CHECK(t3[2].m == 101);

  const std::vector<int> dup{20, 20};
  CHECK(code_of([&] { select_filter_specs(dup); }) == ErrorCode::degenerate_separation);
  const std::vector<int> tiny{1, 20};
  CHECK(code_of([&] { select_filter_specs(tiny); }) == ErrorCode::invalid_period);
  CHECK(code_of([&] { select_filter_specs(pair, 0.5); }) == ErrorCode::invalid_argument);
}
