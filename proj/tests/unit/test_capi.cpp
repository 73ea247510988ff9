// SPDX-License-Identifier: Apache-2.0
// Exercises the shared library strictly through its C interface.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "vmbpbb/vmbpbb.h"

namespace {

std::vector<double> two_sines(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) {
    x[t] = std::sin(2 * std::numbers::pi * t / 50.0) + std::sin(2 * std::numbers::pi * t / 100.0);
  }
  return x;
}

struct Series {
  vmbpbb_series* h = nullptr;
  explicit Series(const std::vector<double>& v, int64_t start = 0) {
    REQUIRE(vmbpbb_series_create(v.data(), v.size(), start, &h) == VMBPBB_OK);
  }
  ~Series() { vmbpbb_series_destroy(h); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(vmbpbb_version()) == "0.1.0");
  CHECK(std::string(vmbpbb_status_name(VMBPBB_OK)) == "ok");
  CHECK(std::string(vmbpbb_status_name(VMBPBB_ERR_INVALID_PERIOD)) == "invalid-period");
  CHECK(std::string(vmbpbb_status_name(VMBPBB_ERR_DEGENERATE_SEPARATION)) == "degenerate-separation");
}

TEST_CASE("series round trip and buffer protocol") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  Series s(v, 12);
  size_t n = 0;
  CHECK(vmbpbb_series_length(s.h, &n) == VMBPBB_OK);
  CHECK(n == 4);
  int64_t start = 0;
  CHECK(vmbpbb_series_start_index(s.h, &start) == VMBPBB_OK);
  CHECK(start == 12);

  size_t len = 0;
  CHECK(vmbpbb_series_values(s.h, nullptr, 0, &len) == VMBPBB_OK);  // size query
  CHECK(len == 4);
  std::vector<double> small(2);
  CHECK(vmbpbb_series_values(s.h, small.data(), small.size(), &len) == VMBPBB_ERR_BUFFER_TOO_SMALL);
  std::vector<double> out(4);
  CHECK(vmbpbb_series_values(s.h, out.data(), out.size(), &len) == VMBPBB_OK);
  CHECK(out == v);

  std::vector<double> means(2);
  std::vector<size_t> counts(2);
  CHECK(vmbpbb_periodic_mean(s.h, 2, means.data(), counts.data()) == VMBPBB_OK);
  CHECK(means == std::vector<double>{2, 3});
  CHECK(counts == std::vector<size_t>{2, 2});
  CHECK(vmbpbb_periodic_mean(s.h, 5, means.data(), counts.data()) == VMBPBB_ERR_INVALID_PERIOD);
  CHECK(std::strlen(vmbpbb_last_error()) > 0);
}

TEST_CASE("null and invalid arguments are reported, not crashed on") {
  vmbpbb_series* out = nullptr;
  const double nan = std::nan("");
  CHECK(vmbpbb_series_create(nullptr, 3, 0, &out) == VMBPBB_ERR_NULL_POINTER);
  CHECK(vmbpbb_series_create(&nan, 1, 0, &out) == VMBPBB_ERR_INVALID_ARGUMENT);
  CHECK(vmbpbb_series_create(&nan, 0, 0, &out) == VMBPBB_ERR_SERIES_TOO_SHORT);
  CHECK(out == nullptr);
  size_t n = 0;
  CHECK(vmbpbb_series_length(nullptr, &n) == VMBPBB_ERR_NULL_POINTER);
  vmbpbb_series_destroy(nullptr);
  vmbpbb_result_destroy(nullptr);
  vmbpbb_scenario_destroy(nullptr);
  vmbpbb_grid_destroy(nullptr);
}

TEST_CASE("filter functions") {
  std::vector<double> w(5);
  size_t len = 0;
  CHECK(vmbpbb_kz_coefficients(3, 2, w.data(), w.size(), &len) == VMBPBB_OK);
  CHECK(len == 5);
  CHECK(w[2] == 3.0 / 9.0);
  CHECK(vmbpbb_kz_coefficients(4, 1, w.data(), w.size(), &len) == VMBPBB_ERR_INVALID_ARGUMENT);

  double e = -1;
  CHECK(vmbpbb_energy_transfer(0.5, 3, 1, 0.0, &e) == VMBPBB_OK);
  CHECK(e == doctest::Approx(1.0 / 9.0));
  double cut = 0;
  CHECK(vmbpbb_half_power_cutoff(1, 1, &cut) == VMBPBB_ERR_UNDEFINED_CUTOFF);
  CHECK(vmbpbb_half_power_cutoff(5, 1, &cut) == VMBPBB_OK);

  const int periods[] = {50, 100};
  vmbpbb_filter_spec specs[2];
  CHECK(vmbpbb_select_filter_specs(periods, 2, 1.0, specs) == VMBPBB_OK);
  CHECK(specs[0].m == 201);
  CHECK(specs[1].nu == 0.01);
  const int dup[] = {50, 50};
  CHECK(vmbpbb_select_filter_specs(dup, 2, 1.0, specs) == VMBPBB_ERR_DEGENERATE_SEPARATION);

  const auto x = two_sines(1000);
  Series s(x);
  vmbpbb_series* comps[2] = {nullptr, nullptr};
  CHECK(vmbpbb_decompose(s.h, periods, 2, 1.0, VMBPBB_EDGE_RENORMALIZE, comps) == VMBPBB_OK);
  vmbpbb_series* direct = nullptr;
  CHECK(vmbpbb_kzft_component(s.h, specs[0], VMBPBB_EDGE_RENORMALIZE, &direct) == VMBPBB_OK);
  std::vector<double> a(1000), b(1000);
  CHECK(vmbpbb_series_values(comps[0], a.data(), a.size(), &len) == VMBPBB_OK);
  CHECK(vmbpbb_series_values(direct, b.data(), b.size(), &len) == VMBPBB_OK);
  CHECK(a == b);
  vmbpbb_series_destroy(direct);
  vmbpbb_series_destroy(comps[0]);
  vmbpbb_series_destroy(comps[1]);

  std::vector<double> re(1000), im(1000);
  int64_t start = -1;
  CHECK(vmbpbb_kzft_apply(s.h, specs[0], VMBPBB_EDGE_TRUNCATE, re.data(), im.data(), re.size(), &len, &start) ==
        VMBPBB_OK);
  CHECK(len == 800);
  CHECK(start == 100);
  for (size_t i = 0; i < len; ++i) CHECK(2.0 * re[i] == doctest::Approx(a[i + 100]).epsilon(1e-9).scale(1.0));

  vmbpbb_series* smooth = nullptr;
  CHECK(vmbpbb_kz_apply(s.h, 5, 2, VMBPBB_EDGE_RENORMALIZE, &smooth) == VMBPBB_OK);
  vmbpbb_series_destroy(smooth);

  std::vector<double> f(501), p(501);
  CHECK(vmbpbb_periodogram(s.h, f.data(), p.data(), f.size(), &len) == VMBPBB_OK);
  CHECK(len == 501);
  CHECK(p[10] == doctest::Approx(250.0).epsilon(1e-9));
}

TEST_CASE("pipeline through the C API") {
  const auto x = two_sines(1000);
  Series s(x);
  const int periods[] = {50, 100};
  vmbpbb_pipeline_config cfg;
  vmbpbb_pipeline_config_init(&cfg);
  CHECK(cfg.resamples == 1000);
  CHECK(cfg.alpha == 0.05);
  cfg.periods = periods;
  cfg.period_count = 2;
  cfg.resamples = 30;
  cfg.seed = 11;

  vmbpbb_result* r = nullptr;
  REQUIRE(vmbpbb_run_pipeline(s.h, &cfg, &r) == VMBPBB_OK);
  size_t n = 0, count = 0;
  int64_t start = -1;
  CHECK(vmbpbb_result_length(r, &n, &start) == VMBPBB_OK);
  CHECK(n == 1000);
  CHECK(start == 0);
  CHECK(vmbpbb_result_component_count(r, &count) == VMBPBB_OK);
  CHECK(count == 2);
  int period = 0, all_pass = -1;
  vmbpbb_filter_spec spec{};
  CHECK(vmbpbb_result_component_info(r, 1, &period, &spec, &all_pass) == VMBPBB_OK);
  CHECK(period == 100);
  CHECK(all_pass == 0);
  CHECK(spec.m == 201);
  CHECK(vmbpbb_result_component_info(r, 2, &period, &spec, &all_pass) == VMBPBB_ERR_OUT_OF_RANGE);

  size_t len = 0;
  CHECK(vmbpbb_result_component_estimates(r, 0, nullptr, 0, &len) == VMBPBB_OK);
  CHECK(len == 30 * 50);
  std::vector<double> est(len);
  CHECK(vmbpbb_result_component_estimates(r, 0, est.data(), est.size(), &len) == VMBPBB_OK);

  std::vector<double> lo(n), pt(n), up(n);
  CHECK(vmbpbb_result_aggregate_band(r, lo.data(), pt.data(), up.data()) == VMBPBB_OK);
  for (size_t t = 0; t < n; ++t) CHECK(lo[t] <= up[t]);
  size_t warnings = 99;
  CHECK(vmbpbb_result_warning_count(r, &warnings) == VMBPBB_OK);
  CHECK(warnings == 0);

  // Same seed, more threads: identical bands.
  cfg.threads = 4;
  vmbpbb_result* r2 = nullptr;
  REQUIRE(vmbpbb_run_pipeline(s.h, &cfg, &r2) == VMBPBB_OK);
  std::vector<double> lo2(n), pt2(n), up2(n);
  CHECK(vmbpbb_result_aggregate_band(r2, lo2.data(), pt2.data(), up2.data()) == VMBPBB_OK);
  CHECK(lo == lo2);
  CHECK(up == up2);
  vmbpbb_result_destroy(r2);

  cfg.mode = VMBPBB_MODE_PBB;
  REQUIRE(vmbpbb_run_pipeline(s.h, &cfg, &r2) == VMBPBB_OK);
  CHECK(vmbpbb_result_component_info(r2, 0, &period, &spec, &all_pass) == VMBPBB_OK);
  CHECK(all_pass == 1);
  vmbpbb_result_destroy(r2);
  vmbpbb_result_destroy(r);

  cfg.resamples = 1;
  CHECK(vmbpbb_run_pipeline(s.h, &cfg, &r) == VMBPBB_ERR_INSUFFICIENT_RESAMPLES);
  cfg.resamples = 10;
  cfg.edge = VMBPBB_EDGE_TRUNCATE;
  CHECK(vmbpbb_run_pipeline(s.h, &cfg, &r) == VMBPBB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("grand mean warning is visible through the C API") {
  auto x = two_sines(1000);
  for (auto& v : x) v += 3.0;
  Series s(x);
  const int periods[] = {50, 100};
  vmbpbb_pipeline_config cfg;
  vmbpbb_pipeline_config_init(&cfg);
  cfg.periods = periods;
  cfg.period_count = 2;
  cfg.resamples = 5;
  vmbpbb_result* r = nullptr;
  REQUIRE(vmbpbb_run_pipeline(s.h, &cfg, &r) == VMBPBB_OK);
  size_t count = 0;
  CHECK(vmbpbb_result_warning_count(r, &count) == VMBPBB_OK);
  REQUIRE(count == 1);
  const char* msg = nullptr;
  CHECK(vmbpbb_result_warning(r, 0, &msg) == VMBPBB_OK);
  CHECK(std::string(msg).find("grand mean") != std::string::npos);
  vmbpbb_result_destroy(r);
}

TEST_CASE("scenario and grid through the C API") {
  vmbpbb_scenario_config cfg;
  vmbpbb_scenario_config_init(&cfg);
  CHECK(cfg.p1 == 50);
  CHECK(cfg.p2 == 100);
  CHECK(cfg.snr_noise == 10.0);
  CHECK(cfg.n == 1000);
  CHECK(cfg.resamples == 200);
  CHECK(cfg.reps == 50);
  cfg.resamples = 20;
  cfg.reps = 3;
  cfg.seed = 4;

  std::vector<double> obs(cfg.n), c1(cfg.n), c2(cfg.n);
  CHECK(vmbpbb_generate_mpc(&cfg, 0, obs.data(), c1.data(), c2.data()) == VMBPBB_OK);
  CHECK(c1[25] == doctest::Approx(0.0).scale(1.0));
  CHECK(obs != c1);

  vmbpbb_scenario* sc = nullptr;
  REQUIRE(vmbpbb_run_scenario(&cfg, &sc) == VMBPBB_OK);
  vmbpbb_scenario_metrics m{};
  CHECK(vmbpbb_scenario_metrics_get(sc, &m) == VMBPBB_OK);
  CHECK(m.reps_completed == 3);
  std::vector<vmbpbb_repetition_record> recs(3);
  for (size_t i = 0; i < 3; ++i) CHECK(vmbpbb_scenario_repetition(sc, i, &recs[i]) == VMBPBB_OK);
  CHECK(vmbpbb_scenario_repetition(sc, 3, &recs[0]) == VMBPBB_ERR_OUT_OF_RANGE);
  vmbpbb_scenario_metrics rebuilt{};
  CHECK(vmbpbb_summarize_repetitions(recs.data(), recs.size(), &rebuilt) == VMBPBB_OK);
  CHECK(rebuilt.ci_ratio_median == m.ci_ratio_median);
  CHECK(rebuilt.r2_diff == m.r2_diff);
  CHECK(std::isnan(rebuilt.r2_pooled_vmbpbb));
  std::vector<double> mv(cfg.n), mp(cfg.n), truth(cfg.n);
  CHECK(vmbpbb_scenario_curves(sc, mv.data(), mp.data(), truth.data()) == VMBPBB_OK);
  CHECK(truth[0] == 0.0);
  vmbpbb_scenario_destroy(sc);

  cfg.p2 = 50;
  CHECK(vmbpbb_run_scenario(&cfg, &sc) == VMBPBB_ERR_DEGENERATE_SEPARATION);

  CHECK(vmbpbb_narrowing_rule_applies(10, 25, 1, 2) == 1);
  CHECK(vmbpbb_narrowing_rule_applies(10, 25, 1, 10) == 0);

  vmbpbb_scenario_config base;
  vmbpbb_scenario_config_init(&base);
  base.n = 500;
  base.resamples = 4;
  base.reps = 1;
  const int periods[] = {10, 25, 50};
  const double sig[] = {1, 1}, noise[] = {2, 10};
  vmbpbb_grid* grid = nullptr;
  REQUIRE(vmbpbb_run_grid(periods, 3, sig, noise, 2, &base, 1, &grid) == VMBPBB_OK);
  size_t cells = 0;
  CHECK(vmbpbb_grid_cell_count(grid, &cells) == VMBPBB_OK);
  CHECK(cells == 6);
  vmbpbb_grid_cell cell{};
  CHECK(vmbpbb_grid_cell_get(grid, 0, &cell) == VMBPBB_OK);
  CHECK(cell.p1 == 10);
  CHECK(cell.p2 == 25);
  CHECK(cell.narrowed == 1);
  CHECK(cell.narrow_factor == 2.0);
  vmbpbb_repetition_record rec{};
  CHECK(vmbpbb_grid_cell_repetition(grid, 0, 0, &rec) == VMBPBB_OK);
  CHECK(vmbpbb_grid_cell_repetition(grid, 0, 1, &rec) == VMBPBB_ERR_OUT_OF_RANGE);
  vmbpbb_grid_destroy(grid);

  const int dup[] = {10, 10};
  CHECK(vmbpbb_run_grid(dup, 2, sig, noise, 2, &base, 1, &grid) == VMBPBB_ERR_CONFIG);
}
