// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace vmbpbb::io {

struct SnrSpec {
  double signal = 1.0;
  double noise = 10.0;
};

/// Simulation grid document. Optional fields fall back to the scale
/// defaults; CLI flags override both.
struct GridConfig {
  std::vector<int> periods;
  std::vector<SnrSpec> snrs;
  std::optional<std::size_t> n;
  std::optional<std::size_t> resamples;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  double narrow_factor = 1.0;
  bool apply_narrowing_rule = true;
  double phase_offset = 0.0;
};

/// "1:10" -> {1, 10}.
SnrSpec parse_snr(std::string_view text);
std::string format_snr(const SnrSpec& snr);

/// "50,100" -> {50, 100}.
std::vector<int> parse_int_list(std::string_view text);

/// "m=201,k=1,nu=0.02" -> (201, 1, 0.02); k defaults to 1.
struct SpecText {
  int m = 1;
  int k = 1;
  double nu = 0.0;
};
SpecText parse_filter_spec(std::string_view text);

GridConfig parse_grid_config(std::string_view json_text);
nlohmann::json to_json(const GridConfig& cfg);

}  // namespace vmbpbb::io
