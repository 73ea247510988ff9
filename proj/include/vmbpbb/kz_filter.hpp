// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vmbpbb/series.hpp"

namespace vmbpbb {

/// One KZFT bandpass: window length m (odd), k iterations, centre nu in
/// cycles/sample. nu = 0 is the plain KZ low-pass.
struct FilterSpec {
  int m = 1;
  int k = 1;
  double nu = 0.0;

  /// Half-width of the support, k(m-1)/2.
  std::size_t half_width() const noexcept;

  bool operator==(const FilterSpec&) const = default;
};

/// Throws invalid_argument unless m is odd and >= 1, k >= 1, 0 <= nu <= 0.5.
void validate(const FilterSpec& spec);

/// KZ weights for offsets u = -h..h, h = k(m-1)/2. Symmetric, positive, sum 1.
class CoefficientTable {
 public:
  CoefficientTable(int m, int k, std::vector<double> weights);

  int m() const noexcept { return m_; }
  int k() const noexcept { return k_; }
  std::size_t half_width() const noexcept { return (weights_.size() - 1) / 2; }
  std::span<const double> weights() const noexcept { return weights_; }
  /// Weight at offset u in [-h, h].
  double weight(std::ptrdiff_t u) const;

 private:
  int m_;
  int k_;
  std::vector<double> weights_;
};

class ComplexSeries {
 public:
  ComplexSeries(std::vector<std::complex<double>> values, std::int64_t start_index = 0);

  std::span<const std::complex<double>> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::int64_t start_index() const noexcept { return start_index_; }
  std::complex<double> operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<std::complex<double>> values_;
  std::int64_t start_index_;
};

/// Boundary handling. renormalize keeps length n and rescales the in-range
/// taps to sum 1; truncate keeps only full-window points.
enum class EdgePolicy { renormalize, truncate };

/// Polynomial coefficients of (1 + z + ... + z^{m-1})^k divided by m^k.
/// Built by integer self-convolution, exact until the final division while
/// the counts fit in 64 bits.
CoefficientTable kz_coefficients(int m, int k);

/// Direct weighted-sum KZ_{m,k}.
TimeSeries kz_apply(const TimeSeries& series, int m, int k,
                    EdgePolicy edge = EdgePolicy::renormalize);

/// Iterated form: k passes of a length-m running mean. O(nk) regardless of m.
/// Matches kz_apply on interior points; edges follow the policy per pass,
/// so renormalized edge values differ from the direct form.
TimeSeries kz_apply_iterated(const TimeSeries& series, int m, int k,
                             EdgePolicy edge = EdgePolicy::renormalize);

/// output(t) = sum_u w(u) e^{-i 2 pi nu u} X(t+u).
ComplexSeries kzft_apply(const TimeSeries& series, const FilterSpec& spec,
                         EdgePolicy edge = EdgePolicy::renormalize);

/// Complex-input variant, used for transfer measurements on analytic signals.
ComplexSeries kzft_apply(const ComplexSeries& series, const FilterSpec& spec,
                         EdgePolicy edge = EdgePolicy::renormalize);

/// Real component from a one-sided bandpass output: 2 Re(cs).
TimeSeries reconstruct_component(const ComplexSeries& cs);

/// Squared gain (sin(pi m d) / (m sin(pi d)))^{2k}, d = lambda - nu.
double energy_transfer(double lambda, int m, int k, double nu);

/// Approximate half-power offset |lambda_0 - nu| of KZ_{m,k}.
double half_power_cutoff(int m, int k);

/// Automatic bandpass design: nu_i = 1/p_i, k = 1, m the smallest odd
/// integer strictly above narrow_factor * 2 / d_i, where d_i is the distance
/// to the nearest other centre (or to zero frequency for a single period).
std::vector<FilterSpec> select_filter_specs(std::span<const int> periods,
                                            double narrow_factor = 1.0);

}  // namespace vmbpbb
