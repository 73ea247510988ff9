// SPDX-License-Identifier: Apache-2.0
//
// vmbpbb command-line tool. A thin layer over the C API: it parses
// arguments and files, calls the library, and writes CSV plus a run
// manifest. Exit codes: 0 success, 1 internal, 2 usage/config, 3 data, 4 io.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "io/config.hpp"
#include "io/csv.hpp"
#include "io/failure.hpp"
#include "io/manifest.hpp"
#include "io/tables.hpp"
#include "vmbpbb/vmbpbb.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vmbpbb::io;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kData = 3, kIo = 4 };

/// A non-OK status from the library, carrying its message.
struct ApiFailure {
  vmbpbb_status status;
  std::string message;
};

void check(vmbpbb_status status) {
  if (status != VMBPBB_OK) throw ApiFailure{status, vmbpbb_last_error()};
}

int exit_code_for(vmbpbb_status status) {
  switch (status) {
    case VMBPBB_ERR_SERIES_TOO_SHORT:
    case VMBPBB_ERR_DEGENERATE_BAND:
    case VMBPBB_ERR_UNDEFINED_CORRELATION:
      return kData;
    case VMBPBB_ERR_INTERNAL:
    case VMBPBB_ERR_NULL_POINTER:
    case VMBPBB_ERR_BUFFER_TOO_SMALL:
      return kInternal;
    default:
      return kConfig;
  }
}

int exit_code_for(FailureKind kind) {
  switch (kind) {
    case FailureKind::parse: return kData;
    case FailureKind::config: return kConfig;
    case FailureKind::io: return kIo;
  }
  return kInternal;
}

struct SeriesDeleter {
  void operator()(vmbpbb_series* s) const { vmbpbb_series_destroy(s); }
};
struct ResultDeleter {
  void operator()(vmbpbb_result* r) const { vmbpbb_result_destroy(r); }
};
struct GridDeleter {
  void operator()(vmbpbb_grid* g) const { vmbpbb_grid_destroy(g); }
};
using SeriesPtr = std::unique_ptr<vmbpbb_series, SeriesDeleter>;
using ResultPtr = std::unique_ptr<vmbpbb_result, ResultDeleter>;
using GridPtr = std::unique_ptr<vmbpbb_grid, GridDeleter>;

unsigned env_threads() {
  if (const char* env = std::getenv("VMBPBB_THREADS")) {
    try {
      const auto v = parse_int(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const Failure&) {
    }
    throw Failure(FailureKind::config, "VMBPBB_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SeriesPtr load_series(const fs::path& path) {
  const SeriesData data = read_series_csv(path);
  vmbpbb_series* raw = nullptr;
  check(vmbpbb_series_create(data.values.data(), data.values.size(), data.start_index, &raw));
  return SeriesPtr(raw);
}

std::vector<double> series_values(const vmbpbb_series* s) {
  std::size_t n = 0;
  check(vmbpbb_series_length(s, &n));
  std::vector<double> out(n);
  check(vmbpbb_series_values(s, out.data(), out.size(), &n));
  return out;
}

std::int64_t series_start(const vmbpbb_series* s) {
  std::int64_t start = 0;
  check(vmbpbb_series_start_index(s, &start));
  return start;
}

vmbpbb_edge_policy parse_edge(const std::string& text) {
  if (text == "renormalize") return VMBPBB_EDGE_RENORMALIZE;
  if (text == "truncate") return VMBPBB_EDGE_TRUNCATE;
  throw Failure(FailureKind::config, "edge must be 'renormalize' or 'truncate'");
}

json spec_json(const vmbpbb_filter_spec& s) { return {{"m", s.m}, {"k", s.k}, {"nu", s.nu}}; }

fs::path manifest_beside(const fs::path& output) {
  return output.parent_path() / (output.filename().string() + ".manifest.json");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure(FailureKind::io, "cannot create " + dir.string() + ": " + ec.message());
}

std::string spec_label(const vmbpbb_filter_spec& s) {
  return "m" + std::to_string(s.m) + "_k" + std::to_string(s.k) + "_nu" + format_double(s.nu);
}

// ---- filter ---------------------------------------------------------------

struct FilterArgs {
  std::string input;
  std::string periods;
  std::vector<std::string> specs;
  std::string edge = "renormalize";
  double narrow_factor = 1.0;
  std::string output;
};

void cmd_filter(const FilterArgs& a) {
  const std::string started = utc_timestamp();
  if (a.periods.empty() == a.specs.empty()) {
    throw Failure(FailureKind::config, "give exactly one of --periods or --spec");
  }
  const auto edge = parse_edge(a.edge);
  auto series = load_series(a.input);
  const auto values = series_values(series.get());
  const std::int64_t start = series_start(series.get());

  std::vector<vmbpbb_filter_spec> specs;
  std::vector<std::string> names;
  if (!a.periods.empty()) {
    const auto periods = parse_int_list(a.periods);
    specs.resize(periods.size());
    check(vmbpbb_select_filter_specs(periods.data(), periods.size(), a.narrow_factor, specs.data()));
    for (const int p : periods) names.push_back("p" + std::to_string(p));
  } else {
    for (const auto& text : a.specs) {
      const SpecText s = parse_filter_spec(text);
      specs.push_back({s.m, s.k, s.nu});
      names.push_back(spec_label(specs.back()));
    }
  }

  // Truncated outputs are shorter; align them to the input t column and
  // leave cells outside the valid range empty.
  std::vector<std::vector<double>> columns;
  for (const auto& spec : specs) {
    vmbpbb_series* raw = nullptr;
    check(vmbpbb_kzft_component(series.get(), spec, edge, &raw));
    SeriesPtr component(raw);
    const auto comp = series_values(component.get());
    const std::int64_t offset = series_start(component.get()) - start;
    std::vector<double> column(values.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < comp.size(); ++i) column[static_cast<std::size_t>(offset) + i] = comp[i];
    columns.push_back(std::move(column));
  }

  const fs::path output(a.output);
  if (output.has_parent_path()) ensure_dir(output.parent_path());
  write_time_columns(output, start, names, columns);

  json config{{"input", a.input}, {"edge", a.edge}, {"narrow_factor", a.narrow_factor}};
  if (!a.periods.empty()) config["periods"] = parse_int_list(a.periods);
  json spec_list = json::array();
  for (const auto& s : specs) spec_list.push_back(spec_json(s));
  config["specs"] = spec_list;
  config["columns"] = names;
  write_json(manifest_beside(output), make_manifest("filter", config, {a.input}, started));
}

// ---- run ------------------------------------------------------------------

struct RunArgs {
  std::string input;
  std::string periods;
  std::string mode = "vmbpbb";
  std::size_t resamples = 1000;
  std::optional<std::uint64_t> seed;
  double alpha = 0.05;
  double narrow_factor = 1.0;
  std::string output_dir;
  std::optional<unsigned> threads;
};

void write_band(const fs::path& path, std::int64_t start, const std::vector<double>& lower,
                const std::vector<double>& point, const std::vector<double>& upper) {
  write_time_columns(path, start, {"lower", "point", "upper"}, {lower, point, upper});
}

void cmd_run(const RunArgs& a) {
  const std::string started = utc_timestamp();
  if (!a.seed) throw Failure(FailureKind::config, "--seed is required");
  vmbpbb_mode mode{};
  if (a.mode == "vmbpbb") {
    mode = VMBPBB_MODE_VMBPBB;
  } else if (a.mode == "pbb") {
    mode = VMBPBB_MODE_PBB;
  } else {
    throw Failure(FailureKind::config, "mode must be 'vmbpbb' or 'pbb'");
  }
  const auto periods = parse_int_list(a.periods);
  auto series = load_series(a.input);

  vmbpbb_pipeline_config cfg;
  vmbpbb_pipeline_config_init(&cfg);
  cfg.periods = periods.data();
  cfg.period_count = periods.size();
  cfg.resamples = a.resamples;
  cfg.seed = *a.seed;
  cfg.narrow_factor = a.narrow_factor;
  cfg.mode = mode;
  cfg.alpha = a.alpha;
  cfg.threads = a.threads.value_or(env_threads());

  vmbpbb_result* raw = nullptr;
  check(vmbpbb_run_pipeline(series.get(), &cfg, &raw));
  ResultPtr result(raw);

  std::size_t n = 0;
  std::int64_t start = 0;
  check(vmbpbb_result_length(result.get(), &n, &start));
  const fs::path dir(a.output_dir);
  ensure_dir(dir);

  std::vector<double> lower(n), point(n), upper(n);
  check(vmbpbb_result_aggregate_band(result.get(), lower.data(), point.data(), upper.data()));
  write_band(dir / "aggregate.csv", start, lower, point, upper);

  std::size_t count = 0;
  check(vmbpbb_result_component_count(result.get(), &count));
  json components = json::array();
  for (std::size_t i = 0; i < count; ++i) {
    int period = 0;
    int all_pass = 0;
    vmbpbb_filter_spec spec{};
    check(vmbpbb_result_component_info(result.get(), i, &period, &spec, &all_pass));
    check(vmbpbb_result_component_band(result.get(), i, lower.data(), point.data(), upper.data()));
    write_band(dir / ("component_p" + std::to_string(period) + ".csv"), start, lower, point, upper);
    components.push_back({{"period", period}, {"filter", all_pass ? json(nullptr) : spec_json(spec)}});
  }

  std::size_t warnings = 0;
  check(vmbpbb_result_warning_count(result.get(), &warnings));
  json warning_list = json::array();
  for (std::size_t i = 0; i < warnings; ++i) {
    const char* message = nullptr;
    check(vmbpbb_result_warning(result.get(), i, &message));
    std::cerr << "warning: " << message << "\n";
    warning_list.push_back(message);
  }

  const json config{{"input", a.input},     {"periods", periods},
                    {"mode", a.mode},       {"resamples", a.resamples},
                    {"seed", *a.seed},      {"alpha", a.alpha},
                    {"narrow_factor", a.narrow_factor}, {"edge", "renormalize"},
                    {"threads", cfg.threads}, {"components", components},
                    {"warnings", warning_list}};
  write_json(dir / "manifest.json", make_manifest("run", config, {a.input}, started));
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::string scale = "desk";
  std::string output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::optional<std::size_t> resamples;
  std::optional<std::size_t> n;
  std::optional<unsigned> threads;
};

GridConfig default_grid() {
  GridConfig g;
  g.periods = {10, 25, 50, 100, 250};
  g.snrs = {{1, 2}, {1, 5}, {1, 10}};
  return g;
}

void cmd_simulate(const SimulateArgs& a) {
  const std::string started = utc_timestamp();
  GridConfig grid = default_grid();
  std::vector<fs::path> inputs;
  if (!a.config.empty()) {
    const auto text = [&] {
      const auto table_path = fs::path(a.config);
      std::ifstream in(table_path, std::ios::binary);
      if (!in) throw Failure(FailureKind::io, "cannot open " + a.config);
      return std::string(std::istreambuf_iterator<char>(in), {});
    }();
    grid = parse_grid_config(text);
    inputs.emplace_back(a.config);
  }

  vmbpbb_scenario_config base;
  vmbpbb_scenario_config_init(&base);
  if (a.scale == "paper") {
    base.resamples = 1000;
    base.reps = 1000;
    std::cerr << "warning: --scale paper runs B=1000 resamples x 1000 repetitions per cell; "
                 "expect hours of compute for the full grid\n";
  } else if (a.scale != "desk") {
    throw Failure(FailureKind::config, "scale must be 'desk' or 'paper'");
  }
  if (grid.n) base.n = *grid.n;
  if (grid.resamples) base.resamples = *grid.resamples;
  if (grid.reps) base.reps = *grid.reps;
  if (a.n) base.n = *a.n;
  if (a.resamples) base.resamples = *a.resamples;
  if (a.reps) base.reps = *a.reps;
  const auto seed = a.seed ? a.seed : grid.seed;
  if (!seed) throw Failure(FailureKind::config, "--seed is required unless the config sets 'seed'");
  base.seed = *seed;
  base.narrow_factor = grid.narrow_factor;
  base.phase_offset = grid.phase_offset;
  base.threads = a.threads.value_or(env_threads());

  std::vector<double> signal, noise;
  for (const auto& s : grid.snrs) {
    signal.push_back(s.signal);
    noise.push_back(s.noise);
  }
  vmbpbb_grid* raw = nullptr;
  check(vmbpbb_run_grid(grid.periods.data(), grid.periods.size(), signal.data(), noise.data(),
                        signal.size(), &base, grid.apply_narrowing_rule ? 1 : 0, &raw));
  GridPtr result(raw);

  std::size_t count = 0;
  check(vmbpbb_grid_cell_count(result.get(), &count));
  std::vector<CellRecords> cells(count);
  for (std::size_t i = 0; i < count; ++i) {
    check(vmbpbb_grid_cell_get(result.get(), i, &cells[i].cell));
    cells[i].repetitions.resize(cells[i].cell.metrics.reps_completed);
    for (std::size_t r = 0; r < cells[i].repetitions.size(); ++r) {
      check(vmbpbb_grid_cell_repetition(result.get(), i, r, &cells[i].repetitions[r]));
    }
  }

  const fs::path dir(a.output_dir);
  ensure_dir(dir);
  write_tables(dir, grid.periods, cells);
  write_repetitions(dir / "repetitions.csv", cells);

  GridConfig resolved = grid;
  resolved.n = base.n;
  resolved.resamples = base.resamples;
  resolved.reps = base.reps;
  resolved.seed = base.seed;
  json config = to_json(resolved);
  config["scale"] = a.scale;
  config["threads"] = base.threads;
  write_json(dir / "manifest.json", make_manifest("simulate", config, inputs, started));
}

// ---- transfer -----------------------------------------------------------------

struct TransferArgs {
  std::string m_list;
  std::string k_list = "1";
  std::vector<double> nus{0.0};
  std::vector<std::string> specs;
  double freq_min = 0.0;
  double freq_max = 0.5;
  std::size_t points = 501;
  std::string output;
};

void cmd_transfer(const TransferArgs& a) {
  const std::string started = utc_timestamp();
  if (a.m_list.empty() == a.specs.empty()) {
    throw Failure(FailureKind::config, "give exactly one of --m or --spec");
  }
  if (a.points < 2 || !(a.freq_max > a.freq_min)) {
    throw Failure(FailureKind::config, "need --points >= 2 and --freq-max > --freq-min");
  }
  std::vector<vmbpbb_filter_spec> specs;
  if (!a.m_list.empty()) {
    for (const int m : parse_int_list(a.m_list)) {
      for (const int k : parse_int_list(a.k_list)) {
        for (const double nu : a.nus) specs.push_back({m, k, nu});
      }
    }
  } else {
    for (const auto& text : a.specs) {
      const SpecText s = parse_filter_spec(text);
      specs.push_back({s.m, s.k, s.nu});
    }
  }

  std::string out = "m,k,nu,frequency,energy\n";
  const double step = (a.freq_max - a.freq_min) / static_cast<double>(a.points - 1);
  for (const auto& s : specs) {
    for (std::size_t i = 0; i < a.points; ++i) {
      const double lambda = i + 1 == a.points ? a.freq_max : a.freq_min + step * static_cast<double>(i);
      double energy = 0.0;
      check(vmbpbb_energy_transfer(lambda, s.m, s.k, s.nu, &energy));
      out += std::to_string(s.m) + "," + std::to_string(s.k) + "," + format_double(s.nu) + "," +
             format_double(lambda) + "," + format_double(energy) + "\n";
    }
  }
  const fs::path output(a.output);
  if (output.has_parent_path()) ensure_dir(output.parent_path());
  write_text(output, out);

  json spec_list = json::array();
  for (const auto& s : specs) spec_list.push_back(spec_json(s));
  const json config{{"specs", spec_list},
                    {"freq_min", a.freq_min},
                    {"freq_max", a.freq_max},
                    {"points", a.points}};
  write_json(manifest_beside(output), make_manifest("transfer", config, {}, started));
}

// ---- report -------------------------------------------------------------------

struct ReportArgs {
  std::string input;
  std::string output_dir;
};

void cmd_report(const ReportArgs& a) {
  const std::string started = utc_timestamp();
  fs::path input(a.input);
  if (fs::is_directory(input)) input /= "repetitions.csv";
  const auto cells = read_repetitions(input);
  const fs::path dir(a.output_dir);
  ensure_dir(dir);
  write_tables(dir, period_order(cells), cells);
  write_json(dir / "manifest.json",
             make_manifest("report", json{{"input", input.string()}}, {input}, started));
}

void report_error(const char* category, const std::string& message) {
  std::cerr << "error[" << category << "]: " << message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-component periodic block bootstrap with KZFT bandpass filters"};
  app.set_version_flag("--version", std::string(vmbpbb_version()));
  app.require_subcommand(1);

  FilterArgs filter_args;
  auto* filter = app.add_subcommand("filter", "Split a series into KZFT bandpass components");
  filter->add_option("--input", filter_args.input, "CSV with header t,value")->required();
  filter->add_option("--periods", filter_args.periods, "Comma-separated periods, e.g. 50,100");
  filter->add_option("--spec", filter_args.specs, "Explicit filter m=..,k=..,nu=.. (repeatable)");
  filter->add_option("--edge", filter_args.edge, "renormalize | truncate");
  filter->add_option("--narrow-factor", filter_args.narrow_factor, "Window-length multiplier (>= 1)");
  filter->add_option("--output", filter_args.output, "Output CSV")->required();

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Bootstrap confidence bands for a multi-component series");
  run->add_option("--input", run_args.input, "CSV with header t,value")->required();
  run->add_option("--periods", run_args.periods, "Comma-separated periods")->required();
  run->add_option("--mode", run_args.mode, "vmbpbb | pbb");
  run->add_option("--B,--resamples", run_args.resamples, "Bootstrap resamples");
  run->add_option("--seed", run_args.seed, "Master seed (required)");
  run->add_option("--alpha", run_args.alpha, "Band level complement, 0.05 for 95%");
  run->add_option("--narrow-factor", run_args.narrow_factor, "Window-length multiplier (>= 1)");
  run->add_option("--output-dir", run_args.output_dir, "Output directory")->required();
  run->add_option("--threads", run_args.threads, "Worker threads (default: $VMBPBB_THREADS or all cores)");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run the PBB vs VMBPBB simulation grid");
  simulate->add_option("--config", sim_args.config, "Grid JSON document");
  simulate->add_option("--scale", sim_args.scale, "desk | paper");
  simulate->add_option("--output-dir", sim_args.output_dir, "Output directory")->required();
  simulate->add_option("--seed", sim_args.seed, "Master seed (overrides config)");
  simulate->add_option("--reps", sim_args.reps, "Repetitions per cell (overrides config)");
  simulate->add_option("--B,--resamples", sim_args.resamples, "Resamples per run (overrides config)");
  simulate->add_option("--n", sim_args.n, "Series length (overrides config)");
  simulate->add_option("--threads", sim_args.threads, "Worker threads");

  TransferArgs transfer_args;
  auto* transfer = app.add_subcommand("transfer", "Tabulate KZFT energy transfer curves");
  transfer->add_option("--m", transfer_args.m_list, "Comma-separated window lengths");
  transfer->add_option("--k", transfer_args.k_list, "Comma-separated iteration counts");
  transfer->add_option("--nu", transfer_args.nus, "Centre frequencies (repeatable)")->delimiter(',');
  transfer->add_option("--spec", transfer_args.specs, "Explicit m=..,k=..,nu=.. (repeatable)");
  transfer->add_option("--freq-min", transfer_args.freq_min, "Lowest frequency");
  transfer->add_option("--freq-max", transfer_args.freq_max, "Highest frequency");
  transfer->add_option("--points", transfer_args.points, "Grid points");
  transfer->add_option("--output", transfer_args.output, "Output CSV")->required();

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Rebuild tables from a repetitions.csv log");
  report->add_option("--input", report_args.input, "repetitions.csv or a simulate output dir")->required();
  report->add_option("--output-dir", report_args.output_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report_error("usage", e.what());
    return kConfig;
  }

  try {
    if (*filter) cmd_filter(filter_args);
    if (*run) cmd_run(run_args);
    if (*simulate) cmd_simulate(sim_args);
    if (*transfer) cmd_transfer(transfer_args);
    if (*report) cmd_report(report_args);
  } catch (const Failure& e) {
    report_error(e.category(), e.what());
    return exit_code_for(e.kind());
  } catch (const ApiFailure& e) {
    report_error(vmbpbb_status_name(e.status), e.message);
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return kInternal;
  }
  return kOk;
}
