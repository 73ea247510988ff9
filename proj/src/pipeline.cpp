// SPDX-License-Identifier: Apache-2.0
#include "vmbpbb/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vmbpbb/error.hpp"

namespace vmbpbb {

namespace {

void validate(const PipelineConfig& cfg, std::size_t n) {
  if (cfg.periods.empty()) throw Error(ErrorCode::invalid_argument, "no periods given");
  for (std::size_t i = 0; i < cfg.periods.size(); ++i) {
    const int p = cfg.periods[i];
    if (p < 2) throw Error(ErrorCode::invalid_period, "period must be >= 2, got " + std::to_string(p));
    if (static_cast<std::size_t>(p) > n) {
      throw Error(ErrorCode::invalid_period, "period " + std::to_string(p) +
                                                 " exceeds series length " + std::to_string(n));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (cfg.periods[j] == p) {
        throw Error(ErrorCode::degenerate_separation, "duplicate period " + std::to_string(p));
      }
    }
  }
  if (cfg.resamples < 2) {
    throw Error(ErrorCode::insufficient_resamples, "pipeline needs at least 2 resamples");
  }
  if (cfg.edge != EdgePolicy::renormalize) {
    throw Error(ErrorCode::invalid_argument,
                "the pipeline needs full-length aligned components (renormalize edges)");
  }
}

std::string grand_mean_warning(const TimeSeries& series) {
  const auto x = series.values();
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return {};
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : x) ss += (v - mean) * (v - mean);
  const double se = std::sqrt(ss / (n - 1.0) / n);
  if (std::abs(mean) > 3.0 * se) {
    return "series grand mean " + std::to_string(mean) +
           " exceeds 3 standard errors of zero; component sums count the mean once per "
           "period when components are not bandpassed";
  }
  return {};
}

}  // namespace

const char* mode_name(Mode mode) noexcept { return mode == Mode::pbb ? "pbb" : "vmbpbb"; }

std::vector<TimeSeries> decompose(const TimeSeries& series, std::span<const int> periods,
                                  double narrow_factor, EdgePolicy edge) {
  const auto specs = select_filter_specs(periods, narrow_factor);
  std::vector<TimeSeries> out;
  out.reserve(specs.size());
  for (const auto& spec : specs) {
    out.push_back(reconstruct_component(kzft_apply(series, spec, edge)));
  }
  return out;
}

SeedSpec component_seed(const SeedSpec& seed, std::int64_t component_label) {
  return seed.with_label(component_label);
}

MpcResult aggregate_components(std::vector<TimeSeries> components,
                               std::vector<std::optional<FilterSpec>> filters,
                               const PipelineConfig& cfg) {
  if (components.size() != cfg.periods.size() || filters.size() != cfg.periods.size()) {
    throw Error(ErrorCode::invalid_argument, "one component and filter per period required");
  }
  const std::size_t n = components.front().size();
  for (const auto& c : components) {
    if (c.size() != n) throw Error(ErrorCode::invalid_argument, "components differ in length");
  }
  validate(cfg, n);

  MpcResult result{.components = {},
                   .aggregate_point = TimeSeries({0.0}),
                   .aggregate_band = {},
                   .mode = cfg.mode,
                   .warnings = {}};
  result.components.reserve(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    const int p = cfg.periods[i];
    BootstrapRun run = bootstrap_periodic_means(components[i], static_cast<std::size_t>(p),
                                                cfg.resamples, component_seed(cfg.seed, p),
                                                cfg.threads);
    CIBand band = extend_band(ci_band(run.estimates, cfg.alpha), n);
    result.components.push_back(ComponentResult{.period = p,
                                                .filter = filters[i],
                                                .component_series = std::move(components[i]),
                                                .run = std::move(run),
                                                .band = std::move(band)});
  }

  // Sum in ascending period order so permuting cfg.periods cannot change
  // the floating-point result.
  std::vector<std::size_t> order(result.components.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return result.components[a].period < result.components[b].period;
  });

  // A_b(t) repeats with the lcm of the periods; quantiles of repeated
  // columns are identical, so only one cycle is computed.
  std::size_t cycle = 1;
  for (const auto& c : result.components) {
    cycle = std::lcm(cycle, static_cast<std::size_t>(c.period));
    if (cycle >= n) {
      cycle = n;
      break;
    }
  }

  Matrix trajectories(cfg.resamples, cycle);
  for (std::size_t b = 0; b < cfg.resamples; ++b) {
    auto row = trajectories.row(b);
    for (const std::size_t idx : order) {
      const auto& comp = result.components[idx];
      const auto est = comp.run.estimates.row(b);
      const auto p = static_cast<std::size_t>(comp.period);
      for (std::size_t t = 0; t < cycle; ++t) row[t] += est[t % p];
    }
  }
  result.aggregate_band = extend_band(ci_band(trajectories, cfg.alpha), n);
  result.aggregate_point =
      TimeSeries(result.aggregate_band.point, result.components.front().component_series.start_index());
  return result;
}

MpcResult run_pipeline(const TimeSeries& series, const PipelineConfig& cfg) {
  validate(cfg, series.size());

  std::vector<TimeSeries> components;
  std::vector<std::optional<FilterSpec>> filters;
  if (cfg.mode == Mode::vmbpbb) {
    const auto specs = select_filter_specs(cfg.periods, cfg.narrow_factor);
    for (const auto& spec : specs) {
      components.push_back(reconstruct_component(kzft_apply(series, spec, cfg.edge)));
      filters.emplace_back(spec);
    }
  } else {
    components.assign(cfg.periods.size(), series);
    filters.assign(cfg.periods.size(), std::nullopt);
  }

  MpcResult result = aggregate_components(std::move(components), std::move(filters), cfg);
  if (auto warning = grand_mean_warning(series); !warning.empty()) {
    result.warnings.push_back(std::move(warning));
  }
  return result;
}

}  // namespace vmbpbb
