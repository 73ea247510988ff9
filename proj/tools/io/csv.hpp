// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vmbpbb::io {

/// A parsed `t,value` input file. t is consecutive integers.
struct SeriesData {
  std::int64_t start_index = 0;
  std::vector<double> values;
};

/// Strict, locale-independent parsers. Throw Failure(parse) on failure.
double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double value);

SeriesData parse_series_csv(std::string_view content, const std::string& source = "<input>");
SeriesData read_series_csv(const std::filesystem::path& path);

/// A header row and string cells. Blank trailing lines are ignored.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by header name; throws Failure(parse) if absent.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view content, const std::string& source = "<input>");
CsvTable read_csv(const std::filesystem::path& path);

/// Writes `t` followed by one numeric column per name. NaN cells are left empty.
void write_time_columns(const std::filesystem::path& path, std::int64_t start_index,
                        const std::vector<std::string>& names,
                        const std::vector<std::vector<double>>& columns);

void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace vmbpbb::io
