// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace vmbpbb {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Pure: the output depends only on (counter, key).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finalizer; used to fold stream labels into a key.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// A master seed plus an ordered list of integer labels naming a substream,
/// e.g. (scenario, repetition, component period, resample index).
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::vector<std::int64_t> labels;

  SeedSpec with_label(std::int64_t label) const;
  SeedSpec with_labels(std::initializer_list<std::int64_t> extra) const;

  /// 64-bit Philox key: mix64(master_seed ^ hash(labels)). The label hash
  /// folds in the label count, so prefixes never collide with extensions.
  std::uint64_t stream_key() const noexcept;

  bool operator==(const SeedSpec&) const = default;
};

/// Counter-mode Philox stream. Draw j of a stream is a fixed function of
/// (key, j), so streams never depend on thread scheduling.
class RandomStream {
 public:
  explicit RandomStream(const SeedSpec& seed) : RandomStream(seed.stream_key()) {}
  explicit RandomStream(std::uint64_t key) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() noexcept;

  /// Unbiased uniform integer in [0, bound); bound must be > 0.
  /// Lemire's multiply-and-reject method.
  std::uint64_t uniform_index(std::uint64_t bound) noexcept;

  /// Standard normal via Box-Muller. Both variates of a pair are used.
  double normal() noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int cursor_ = 4;  // in 64-bit halves: 0 or 2; 4 means empty
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace vmbpbb
