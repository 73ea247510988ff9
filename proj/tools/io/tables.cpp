// SPDX-License-Identifier: Apache-2.0
#include "io/tables.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "io/config.hpp"
#include "io/failure.hpp"

namespace vmbpbb::io {

namespace {

std::string cell_text(double value) { return std::isnan(value) ? std::string() : format_double(value); }

bool same_snr(const vmbpbb_grid_cell& a, double signal, double noise) {
  return a.snr_signal == signal && a.snr_noise == noise;
}

std::vector<std::pair<double, double>> snr_order(const std::vector<CellRecords>& cells) {
  std::vector<std::pair<double, double>> out;
  for (const auto& c : cells) {
    const std::pair<double, double> snr{c.cell.snr_signal, c.cell.snr_noise};
    if (std::find(out.begin(), out.end(), snr) == out.end()) out.push_back(snr);
  }
  return out;
}

template <typename Metric>
std::string matrix_table(const std::vector<int>& periods, const std::vector<CellRecords>& cells,
                         Metric metric) {
  std::string out = "snr,period";
  for (const int p : periods) out += ",p" + std::to_string(p);
  out += ",narrowed\n";
  for (const auto& [signal, noise] : snr_order(cells)) {
    const std::string snr = format_snr({signal, noise});
    for (const int row : periods) {
      out += snr + "," + std::to_string(row);
      std::string narrowed;
      for (const int col : periods) {
        out += ",";
        for (const auto& c : cells) {
          if (!same_snr(c.cell, signal, noise) || c.cell.p1 != row || c.cell.p2 != col) continue;
          out += cell_text(metric(c.cell.metrics));
          if (c.cell.narrowed) narrowed += (narrowed.empty() ? "" : ";") + std::to_string(col);
          break;
        }
      }
      out += "," + narrowed + "\n";
    }
  }
  return out;
}

}  // namespace

std::vector<int> period_order(const std::vector<CellRecords>& cells) {
  std::vector<int> out;
  for (const auto& c : cells) {
    for (const int p : {c.cell.p1, c.cell.p2}) {
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  }
  return out;
}

void write_tables(const std::filesystem::path& dir, const std::vector<int>& periods,
                  const std::vector<CellRecords>& cells) {
  write_text(dir / "table1.csv",
             matrix_table(periods, cells, [](const vmbpbb_scenario_metrics& m) { return m.ci_ratio_median; }));
  write_text(dir / "table2.csv",
             matrix_table(periods, cells, [](const vmbpbb_scenario_metrics& m) { return m.r2_diff; }));

  std::string coverage = "snr,p1,p2,narrow_factor,outside_frac_vmbpbb,outside_frac_pbb\n";
  std::string summary =
      "snr,p1,p2,narrow_factor,narrowed,ci_ratio_median,r2_vmbpbb,r2_pbb,r2_diff,"
      "outside_frac_vmbpbb,outside_frac_pbb,r2_pooled_vmbpbb,r2_pooled_pbb,reps_completed\n";
  for (const auto& c : cells) {
    const auto& m = c.cell.metrics;
    const std::string key = format_snr({c.cell.snr_signal, c.cell.snr_noise}) + "," +
                            std::to_string(c.cell.p1) + "," + std::to_string(c.cell.p2) + "," +
                            format_double(c.cell.narrow_factor);
    coverage += key + "," + cell_text(m.outside_frac_vmbpbb) + "," + cell_text(m.outside_frac_pbb) + "\n";
    summary += key + "," + std::to_string(c.cell.narrowed) + "," + cell_text(m.ci_ratio_median) + "," +
               cell_text(m.r2_vmbpbb) + "," + cell_text(m.r2_pbb) + "," + cell_text(m.r2_diff) + "," +
               cell_text(m.outside_frac_vmbpbb) + "," + cell_text(m.outside_frac_pbb) + "," +
               cell_text(m.r2_pooled_vmbpbb) + "," + cell_text(m.r2_pooled_pbb) + "," +
               std::to_string(m.reps_completed) + "\n";
  }
  write_text(dir / "coverage.csv", coverage);
  write_text(dir / "cells.csv", summary);
}

void write_repetitions(const std::filesystem::path& path, const std::vector<CellRecords>& cells) {
  std::string out =
      "snr,p1,p2,narrow_factor,narrowed,rep,ci_ratio,outside_vmbpbb,outside_pbb,r2_vmbpbb,r2_pbb\n";
  for (const auto& c : cells) {
    const std::string key = format_snr({c.cell.snr_signal, c.cell.snr_noise}) + "," +
                            std::to_string(c.cell.p1) + "," + std::to_string(c.cell.p2) + "," +
                            format_double(c.cell.narrow_factor) + "," + std::to_string(c.cell.narrowed);
    for (const auto& r : c.repetitions) {
      out += key + "," + std::to_string(r.rep) + "," + format_double(r.ci_ratio) + "," +
             format_double(r.outside_vmbpbb) + "," + format_double(r.outside_pbb) + "," +
             format_double(r.r2_vmbpbb) + "," + format_double(r.r2_pbb) + "\n";
    }
  }
  write_text(path, out);
}

std::vector<CellRecords> read_repetitions(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  const std::size_t c_snr = table.column("snr");
  const std::size_t c_p1 = table.column("p1");
  const std::size_t c_p2 = table.column("p2");
  const std::size_t c_nf = table.column("narrow_factor");
  const std::size_t c_narrowed = table.column("narrowed");
  const std::size_t c_rep = table.column("rep");
  const std::size_t c_ratio = table.column("ci_ratio");
  const std::size_t c_ov = table.column("outside_vmbpbb");
  const std::size_t c_op = table.column("outside_pbb");
  const std::size_t c_rv = table.column("r2_vmbpbb");
  const std::size_t c_rp = table.column("r2_pbb");

  std::vector<CellRecords> cells;
  std::size_t line = 1;
  for (const auto& row : table.rows) {
    ++line;
    try {
      SnrSpec snr{};
      try {
        snr = parse_snr(row[c_snr]);
      } catch (const Failure& e) {
        throw Failure(FailureKind::parse, e.what());
      }
      vmbpbb_grid_cell cell{};
      cell.p1 = static_cast<int>(parse_int(row[c_p1]));
      cell.p2 = static_cast<int>(parse_int(row[c_p2]));
      cell.snr_signal = snr.signal;
      cell.snr_noise = snr.noise;
      cell.narrow_factor = parse_double(row[c_nf]);
      cell.narrowed = static_cast<int>(parse_int(row[c_narrowed]));
      vmbpbb_repetition_record rec{};
      const std::int64_t rep = parse_int(row[c_rep]);
      if (rep < 0) throw Failure(FailureKind::parse, "negative repetition index");
      rec.rep = static_cast<std::size_t>(rep);
      rec.ci_ratio = parse_double(row[c_ratio]);
      rec.outside_vmbpbb = parse_double(row[c_ov]);
      rec.outside_pbb = parse_double(row[c_op]);
      rec.r2_vmbpbb = parse_double(row[c_rv]);
      rec.r2_pbb = parse_double(row[c_rp]);

      auto it = std::find_if(cells.begin(), cells.end(), [&](const CellRecords& c) {
        return c.cell.p1 == cell.p1 && c.cell.p2 == cell.p2 && same_snr(c.cell, cell.snr_signal, cell.snr_noise) &&
               c.cell.narrow_factor == cell.narrow_factor && c.cell.narrowed == cell.narrowed;
      });
      if (it == cells.end()) {
        cells.push_back({cell, {}});
        it = std::prev(cells.end());
      }
      it->repetitions.push_back(rec);
    } catch (const Failure& e) {
      throw Failure(FailureKind::parse, path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  }
  if (cells.empty()) throw Failure(FailureKind::parse, path.string() + ": no repetition rows");

  for (auto& c : cells) {
    if (vmbpbb_summarize_repetitions(c.repetitions.data(), c.repetitions.size(), &c.cell.metrics) !=
        VMBPBB_OK) {
      throw Failure(FailureKind::parse, path.string() + ": " + vmbpbb_last_error());
    }
  }
  return cells;
}

}  // namespace vmbpbb::io
