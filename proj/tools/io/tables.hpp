// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <vector>

#include "io/csv.hpp"
#include "vmbpbb/vmbpbb.h"

namespace vmbpbb::io {

/// One grid cell with its per-repetition records, as produced by a grid run
/// or reconstructed from repetitions.csv.
struct CellRecords {
  vmbpbb_grid_cell cell{};
  std::vector<vmbpbb_repetition_record> repetitions;
};

/// Periods in order of first appearance over (p1, p2) of each cell.
std::vector<int> period_order(const std::vector<CellRecords>& cells);

/// Writes table1.csv, table2.csv, coverage.csv and cells.csv into `dir`.
///
/// The two tables are period x period matrices stacked per SNR block:
/// columns `snr,period,p<P1>,...,narrowed`; cell (row p1, column p2) holds
/// the metric for the pair, other cells are empty. `narrowed` lists the
/// column periods in that row whose cell used a narrowed filter design,
/// separated by ';'.
void write_tables(const std::filesystem::path& dir, const std::vector<int>& periods,
                  const std::vector<CellRecords>& cells);

/// Per-repetition log with one row per (cell, repetition).
void write_repetitions(const std::filesystem::path& path, const std::vector<CellRecords>& cells);

/// Inverse of write_repetitions. Cell metrics are rebuilt from the records.
std::vector<CellRecords> read_repetitions(const std::filesystem::path& path);

}  // namespace vmbpbb::io
