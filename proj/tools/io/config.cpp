// SPDX-License-Identifier: Apache-2.0
#include "io/config.hpp"

#include <algorithm>
#include <set>

#include "io/csv.hpp"
#include "io/failure.hpp"

namespace vmbpbb::io {

namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw Failure(FailureKind::config, message);
}

template <typename T>
T get_number(const nlohmann::json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) config_error(std::string("'") + key + "' must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer() || (std::is_unsigned_v<T> && v.get<std::int64_t>() < 0 &&
                                   !v.is_number_unsigned())) {
      config_error(std::string("'") + key + "' must be a non-negative integer");
    }
  }
  return v.get<T>();
}

}  // namespace

SnrSpec parse_snr(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) config_error("SNR must look like 'signal:noise', got '" + std::string(text) + "'");
  try {
    SnrSpec snr{parse_double(text.substr(0, colon)), parse_double(text.substr(colon + 1))};
    if (!(snr.signal > 0.0) || !(snr.noise >= 0.0)) config_error("SNR parts must be signal > 0, noise >= 0");
    return snr;
  } catch (const Failure& e) {
    if (e.kind() == FailureKind::config) throw;
    config_error("bad SNR '" + std::string(text) + "': " + e.what());
  }
}

std::string format_snr(const SnrSpec& snr) {
  return format_double(snr.signal) + ":" + format_double(snr.noise);
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const auto token = text.substr(start, comma - start);
    std::int64_t v = 0;
    try {
      v = parse_int(token);
    } catch (const Failure&) {
      config_error("bad integer list '" + std::string(text) + "'");
    }
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      config_error("integer out of range in '" + std::string(text) + "'");
    }
    out.push_back(static_cast<int>(v));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

SpecText parse_filter_spec(std::string_view text) {
  SpecText spec;
  bool have_m = false;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const auto item = text.substr(start, comma - start);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) config_error("filter spec items must be key=value: '" + std::string(text) + "'");
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    try {
      if (key == "m") {
        spec.m = static_cast<int>(parse_int(value));
        have_m = true;
      } else if (key == "k") {
        spec.k = static_cast<int>(parse_int(value));
      } else if (key == "nu") {
        spec.nu = parse_double(value);
      } else {
        config_error("unknown filter spec key '" + std::string(key) + "'");
      }
    } catch (const Failure& e) {
      if (e.kind() == FailureKind::config) throw;
      config_error("bad filter spec '" + std::string(text) + "': " + e.what());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (!have_m) config_error("filter spec needs m: '" + std::string(text) + "'");
  return spec;
}

GridConfig parse_grid_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Failure(FailureKind::parse, std::string("config JSON: ") + e.what());
  }
  if (!doc.is_object()) config_error("config must be a JSON object");

  static const std::set<std::string> known{"periods", "snrs", "n", "resamples", "reps", "seed",
                                           "narrow_factor", "apply_narrowing_rule", "phase_offset"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) config_error("unknown config key '" + key + "'");
  }

  GridConfig cfg;
  try {
    if (!doc.contains("periods") || !doc["periods"].is_array()) config_error("'periods' must be an array");
    for (const auto& p : doc["periods"]) {
      if (!p.is_number_integer()) config_error("'periods' entries must be integers");
      cfg.periods.push_back(p.get<int>());
    }
    if (doc.contains("snrs")) {
      if (!doc["snrs"].is_array()) config_error("'snrs' must be an array");
      for (const auto& s : doc["snrs"]) {
        if (s.is_string()) {
          cfg.snrs.push_back(parse_snr(s.get<std::string>()));
        } else if (s.is_array() && s.size() == 2 && s[0].is_number() && s[1].is_number()) {
          cfg.snrs.push_back({s[0].get<double>(), s[1].get<double>()});
        } else {
          config_error("'snrs' entries must be \"s:n\" strings or [s, n] pairs");
        }
      }
    } else {
      cfg.snrs = {{1, 2}, {1, 5}, {1, 10}};
    }
    if (doc.contains("n")) cfg.n = get_number<std::size_t>(doc, "n");
    if (doc.contains("resamples")) cfg.resamples = get_number<std::size_t>(doc, "resamples");
    if (doc.contains("reps")) cfg.reps = get_number<std::size_t>(doc, "reps");
    if (doc.contains("seed")) cfg.seed = get_number<std::uint64_t>(doc, "seed");
    if (doc.contains("narrow_factor")) cfg.narrow_factor = get_number<double>(doc, "narrow_factor");
    if (doc.contains("apply_narrowing_rule")) {
      if (!doc["apply_narrowing_rule"].is_boolean()) config_error("'apply_narrowing_rule' must be a boolean");
      cfg.apply_narrowing_rule = doc["apply_narrowing_rule"].get<bool>();
    }
    if (doc.contains("phase_offset")) cfg.phase_offset = get_number<double>(doc, "phase_offset");
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("config: ") + e.what());
  }

  if (cfg.periods.size() < 2) config_error("grid needs at least two periods");
  std::set<int> seen;
  for (const int p : cfg.periods) {
    if (p < 2) config_error("grid periods must be >= 2");
    if (!seen.insert(p).second) config_error("duplicate grid period " + std::to_string(p));
  }
  for (const auto& s : cfg.snrs) {
    if (!(s.signal > 0.0) || !(s.noise >= 0.0)) config_error("SNR parts must be signal > 0, noise >= 0");
  }
  return cfg;
}

nlohmann::json to_json(const GridConfig& cfg) {
  nlohmann::json doc;
  doc["periods"] = cfg.periods;
  nlohmann::json snrs = nlohmann::json::array();
  for (const auto& s : cfg.snrs) snrs.push_back(format_snr(s));
  doc["snrs"] = snrs;
  if (cfg.n) doc["n"] = *cfg.n;
  if (cfg.resamples) doc["resamples"] = *cfg.resamples;
  if (cfg.reps) doc["reps"] = *cfg.reps;
  if (cfg.seed) doc["seed"] = *cfg.seed;
  doc["narrow_factor"] = cfg.narrow_factor;
  doc["apply_narrowing_rule"] = cfg.apply_narrowing_rule;
  doc["phase_offset"] = cfg.phase_offset;
  return doc;
}

}  // namespace vmbpbb::io
