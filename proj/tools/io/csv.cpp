// SPDX-License-Identifier: Apache-2.0
#include "io/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "io/failure.hpp"

namespace vmbpbb::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(FailureKind::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string at_line(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

}  // namespace

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw Failure(FailureKind::parse, "not a finite number: '" + std::string(text) + "'");
  }
  return value;
}

std::int64_t parse_int(std::string_view text) {
  text = trim(text);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Failure(FailureKind::parse, "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

CsvTable parse_csv(std::string_view content, const std::string& source) {
  CsvTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    const std::string_view line = trim(content.substr(pos, eol - pos));
    ++line_no;
    pos = eol + 1;
    if (line.empty()) {
      if (pos > content.size()) break;
      continue;
    }
    auto fields = split_fields(line);
    if (table.header.empty()) {
      for (auto f : fields) table.header.emplace_back(f);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw Failure(FailureKind::parse, at_line(source, line_no) + "expected " +
                                        std::to_string(table.header.size()) + " fields, found " +
                                        std::to_string(fields.size()));
    }
    std::vector<std::string> row;
    row.reserve(fields.size());
    for (auto f : fields) row.emplace_back(f);
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw Failure(FailureKind::parse, source + ": empty input");
  return table;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Failure(FailureKind::parse, "missing column '" + std::string(name) + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  return parse_csv(read_all(path), path.string());
}

SeriesData parse_series_csv(std::string_view content, const std::string& source) {
  SeriesData data;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  std::int64_t expected_t = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    const std::string_view line = trim(content.substr(pos, eol - pos));
    ++line_no;
    pos = eol + 1;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "t" || fields[1] != "value") {
        throw Failure(FailureKind::parse, at_line(source, line_no) + "header must be 't,value'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 2) {
      throw Failure(FailureKind::parse, at_line(source, line_no) + "expected 2 fields, found " +
                                        std::to_string(fields.size()));
    }
    std::int64_t t = 0;
    double v = 0.0;
    try {
      t = parse_int(fields[0]);
      v = parse_double(fields[1]);
    } catch (const Failure& e) {
      throw Failure(FailureKind::parse, at_line(source, line_no) + e.what());
    }
    if (data.values.empty()) {
      data.start_index = t;
    } else if (t != expected_t) {
      throw Failure(FailureKind::parse, at_line(source, line_no) + "time index " + std::to_string(t) +
                                        " is not consecutive (expected " +
                                        std::to_string(expected_t) + ")");
    }
    expected_t = t + 1;
    data.values.push_back(v);
  }
  if (!header_seen) throw Failure(FailureKind::parse, source + ": empty input");
  if (data.values.empty()) throw Failure(FailureKind::parse, source + ": no data rows");
  return data;
}

SeriesData read_series_csv(const std::filesystem::path& path) {
  return parse_series_csv(read_all(path), path.string());
}

void write_time_columns(const std::filesystem::path& path, std::int64_t start_index,
                        const std::vector<std::string>& names,
                        const std::vector<std::vector<double>>& columns) {
  std::string out = "t";
  for (const auto& name : names) out += "," + name;
  out += "\n";
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    out += std::to_string(start_index + static_cast<std::int64_t>(i));
    for (const auto& col : columns) {
      out += ",";
      if (!std::isnan(col[i])) out += format_double(col[i]);
    }
    out += "\n";
  }
  write_text(path, out);
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure(FailureKind::io, "cannot write " + path.string());
  out << content;
  if (!out) throw Failure(FailureKind::io, "write failed for " + path.string());
}

}  // namespace vmbpbb::io
