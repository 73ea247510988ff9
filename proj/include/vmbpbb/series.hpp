// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vmbpbb {

/// Unit-spaced, finite, non-empty real series. Sample i sits at time
/// start_index() + i.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values, std::int64_t start_index = 0);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::int64_t start_index() const noexcept { return start_index_; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool operator==(const TimeSeries&) const = default;

 private:
  std::vector<double> values_;
  std::int64_t start_index_;
};

/// Per-phase means of a series at period p. Phase s collects indices i with
/// i mod p == s.
struct PeriodicMean {
  std::size_t period = 0;
  std::vector<double> means;
  std::vector<std::size_t> counts;
};

struct Spectrum {
  std::vector<double> frequencies;  // cycles/sample, in [0, 0.5]
  std::vector<double> power;        // |DFT|^2 / n
};

/// Dense row-major matrix; used for resample-by-phase and
/// resample-by-time tables.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

PeriodicMean periodic_mean(const TimeSeries& series, std::size_t period);

/// Cyclic tiling of the phase means to length n.
TimeSeries extend_periodic(const PeriodicMean& pm, std::size_t n,
                           std::int64_t start_index = 0);

/// Periodogram at the Fourier frequencies j/n, j = 0..floor(n/2).
Spectrum periodogram(const TimeSeries& series);

}  // namespace vmbpbb
