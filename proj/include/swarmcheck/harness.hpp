#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "swarmcheck/engine.hpp"

namespace swarmcheck {

/// A sweep runs the base config at every (n, parameter combination, seed).
/// `param_grid` keys name either a controller parameter or one of the run
/// fields listed in `apply_param`.
struct SweepConfig {
  RunConfig base;
  std::vector<std::size_t> n_values;
  std::size_t seeds_per_cell = 1;
  std::map<std::string, std::vector<double>> param_grid;
};

/// Sets one swept parameter on a run config.
inline void apply_param(RunConfig& config, const std::string& name, double value) {
  if (default_params(config.controller.kind).contains(name)) {
    config.controller.params[name] = value;
  } else if (name == "dt") {
    config.dt = value;
  } else if (name == "delta") {
    config.delta = value;
  } else if (name == "coverage_delta") {
    config.coverage_delta = value;
  } else if (name == "coherence_c") {
    config.coherence_c = value;
  } else if (name == "v_max") {
    config.v_max = value;
  } else if (name == "scenario.spacing") {
    config.scenario.spacing = value;
  } else if (name == "scenario.extent") {
    config.scenario.extent = value;
  } else if (name == "scenario.cluster_gap") {
    config.scenario.cluster_gap = value;
  } else if (name == "scenario.jitter") {
    config.scenario.jitter = value;
  } else if (name == "scenario.velocity_jitter") {
    config.scenario.velocity_jitter = value;
  } else {
    throw Error(ErrorKind::InvalidConfig, "param_grid key '" + name + "' is not a parameter of controller " +
                                              std::string(to_string(config.controller.kind)) + " or a run field");
  }
}

/// Every combination of the grid, keys in map order, last key varying fastest.
inline std::vector<ParamMap> param_combinations(const std::map<std::string, std::vector<double>>& grid) {
  std::vector<ParamMap> combos{ParamMap{}};
  for (const auto& [name, values] : grid) {
    std::vector<ParamMap> next;
    for (const auto& partial : combos) {
      for (double v : values) {
        ParamMap m = partial;
        m[name] = v;
        next.push_back(std::move(m));
      }
    }
    combos = std::move(next);
  }
  return combos;
}

/// One sweep cell, ready to run.
struct SweepCell {
  std::size_t n = 0;
  std::size_t param_index = 0;
  ParamMap params;
  std::uint64_t seed = 0;
  RunConfig config;
};

inline void validate(const SweepConfig& sweep) {
  if (sweep.n_values.size() < 2) throw Error(ErrorKind::InvalidConfig, "n_values needs at least 2 entries");
  for (std::size_t i = 1; i < sweep.n_values.size(); ++i) {
    if (sweep.n_values[i] <= sweep.n_values[i - 1])
      throw Error(ErrorKind::InvalidConfig, "n_values must be strictly increasing");
  }
  if (sweep.seeds_per_cell < 1) throw Error(ErrorKind::InvalidConfig, "seeds_per_cell must be >= 1");
  for (const auto& [name, values] : sweep.param_grid) {
    if (values.empty()) throw Error(ErrorKind::InvalidConfig, "param_grid '" + name + "' has no values");
  }
}

/// Expands a sweep into cells in canonical (n, params, seed) order. Seeds are
/// base.seed, base.seed + 1, ...
inline std::vector<SweepCell> expand(const SweepConfig& sweep) {
  validate(sweep);
  const auto combos = param_combinations(sweep.param_grid);
  std::vector<SweepCell> cells;
  for (std::size_t n : sweep.n_values) {
    for (std::size_t p = 0; p < combos.size(); ++p) {
      for (std::size_t k = 0; k < sweep.seeds_per_cell; ++k) {
        SweepCell cell{n, p, combos[p], sweep.base.seed + k, sweep.base};
        cell.config.n = n;
        cell.config.seed = cell.seed;
        for (const auto& [name, value] : combos[p]) apply_param(cell.config, name, value);
        validate(cell.config);
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

/// Per-run extrema over sample times. A failed run carries its error and no
/// meaningful extrema.
struct RunSummary {
  std::size_t n = 0;
  ParamMap params;
  std::uint64_t seed = 0;
  double max_energy = 0.0;  ///< +inf when some sample had coincident agents
  double min_coverage = 1.0;
  double min_separation_overall = 0.0;
  double max_vdev_overall = 0.0;
  bool hypothesis_ok = false;
  bool failed = false;
  std::string error;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

inline RunSummary summarize(const RunRecord& record, const ParamMap& params = {}) {
  RunSummary s;
  s.n = record.config.n;
  s.params = params;
  s.seed = record.config.seed;
  s.max_energy = 0.0;
  s.min_coverage = 1.0;
  s.min_separation_overall = std::numeric_limits<double>::infinity();
  s.max_vdev_overall = 0.0;
  for (const auto& row : record.samples) {
    s.max_energy = std::max(s.max_energy, row.energy.value_or(std::numeric_limits<double>::infinity()));
    s.min_coverage = std::min(s.min_coverage, row.coverage.value);
    s.min_separation_overall = std::min(s.min_separation_overall, row.min_separation);
    s.max_vdev_overall = std::max(s.max_vdev_overall, row.max_velocity_deviation);
  }
  s.hypothesis_ok = record.count(ViolationKind::SeparationBreach) == 0 &&
                    record.count(ViolationKind::CoherenceBreach) == 0 &&
                    record.count(ViolationKind::DegenerateEnergy) == 0;
  return s;
}

struct SweepResult {
  std::vector<SweepCell> cells;
  std::vector<RunSummary> summaries;            ///< aligned with cells
  std::vector<std::optional<RunRecord>> records;  ///< aligned with cells; empty unless kept or failed
};

/// Runs every cell on up to `parallelism` threads. Output order is the
/// canonical cell order whatever the schedule. Cells whose run raises a
/// runtime error (numeric blowup, coincident agents in a controller) become
/// failed summaries.
inline SweepResult run_sweep(const SweepConfig& sweep, std::size_t parallelism = 1, bool keep_records = false) {
  SweepResult result;
  result.cells = expand(sweep);
  const std::size_t total = result.cells.size();
  result.summaries.resize(total);
  result.records.resize(total);

  auto work = [&](std::size_t idx) {
    const SweepCell& cell = result.cells[idx];
    try {
      RunRecord record = run(cell.config);
      result.summaries[idx] = summarize(record, cell.params);
      if (keep_records) result.records[idx] = std::move(record);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidConfig) throw;
      RunSummary s;
      s.n = cell.n;
      s.params = cell.params;
      s.seed = cell.seed;
      s.failed = true;
      s.error = e.what();
      result.summaries[idx] = std::move(s);
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(total, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < total; ++i) work(i);
    return result;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> errored{false};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < total && !errored; i = next++) {
          try {
            work(i);
          } catch (...) {
            if (!errored.exchange(true)) first_error = std::current_exception();
          }
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

inline constexpr double kTrendFloor = 1e-12;
inline constexpr double kDefaultGamma = 0.2;

/// Least-squares slope of log2(max(value, floor)) against log2(n): the
/// relative growth of `values` per doubling of n. +inf if any value is +inf.
inline double trend_stat(std::span<const double> values, std::span<const std::size_t> n_values) {
  if (values.size() != n_values.size() || values.size() < 2) {
    throw Error(ErrorKind::InsufficientData, "trend needs >= 2 matching (n, value) points");
  }
  const std::size_t m = values.size();
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (values[i] == std::numeric_limits<double>::infinity()) return values[i];
    x[i] = std::log2(static_cast<double>(n_values[i]));
    y[i] = std::log2(std::max(values[i], kTrendFloor));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw Error(ErrorKind::InsufficientData, "trend needs distinct n values");
  return sxy / sxx;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  if (v.size() % 2 == 1) return v[h];
  if (v[h - 1] == v[h]) return v[h];
  return 0.5 * (v[h - 1] + v[h]);
}

enum class Verdict { Consistent, Violated, HypothesesFailed };

inline constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Violated: return "violated";
    case Verdict::HypothesesFailed: return "hypotheses_failed";
  }
  return "unknown";
}

struct SizeAggregate {
  std::size_t n = 0;
  std::size_t runs = 0;
  std::size_t failed = 0;
  double median_max_energy = 0.0;
  double median_min_coverage = 0.0;
};

struct RobustnessReport {
  std::vector<SizeAggregate> per_n;
  double gamma = kDefaultGamma;
  double energy_trend = 0.0;
  double coverage_trend = 0.0;
  bool energy_bounded = false;
  bool coverage_floored = false;
  bool hypotheses_held = false;
  Verdict theorem_consistent = Verdict::HypothesesFailed;
  double fitted_C = 0.0;
  double fitted_Cprime = 0.0;
};

/// The verdict is exactly: hypotheses failed if any run breached them (or
/// failed outright); otherwise violated iff energy is bounded while coverage
/// is not floored; otherwise consistent.
inline Verdict verdict(bool energy_bounded, bool coverage_floored, bool hypotheses_held) noexcept {
  if (!hypotheses_held) return Verdict::HypothesesFailed;
  if (energy_bounded && !coverage_floored) return Verdict::Violated;
  return Verdict::Consistent;
}

/// Aggregates run summaries into per-n medians, size trends and the
/// bounded-energy => floored-coverage verdict.
inline RobustnessReport robustness_report(std::span<const RunSummary> summaries, double gamma = kDefaultGamma) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidConfig, "gamma must be > 0");
  std::map<std::size_t, std::vector<const RunSummary*>> by_n;
  for (const auto& s : summaries) by_n[s.n].push_back(&s);

  RobustnessReport report;
  report.gamma = gamma;
  report.hypotheses_held = !summaries.empty();
  std::vector<double> energies, coverages;
  std::vector<std::size_t> ns;
  for (const auto& [n, runs] : by_n) {
    SizeAggregate agg{n, runs.size(), 0, 0.0, 0.0};
    std::vector<double> e, c;
    for (const RunSummary* s : runs) {
      if (s->failed) {
        ++agg.failed;
        report.hypotheses_held = false;
        continue;
      }
      report.hypotheses_held = report.hypotheses_held && s->hypothesis_ok;
      e.push_back(s->max_energy);
      c.push_back(s->min_coverage);
    }
    if (e.empty()) continue;
    agg.median_max_energy = median(e);
    agg.median_min_coverage = median(c);
    report.per_n.push_back(agg);
    ns.push_back(n);
    energies.push_back(agg.median_max_energy);
    coverages.push_back(agg.median_min_coverage);
  }
  if (ns.size() < 2) {
    throw Error(ErrorKind::InsufficientData,
                "n_values: report needs successful runs at >= 2 distinct swarm sizes, got " + std::to_string(ns.size()));
  }

  report.energy_trend = trend_stat(energies, ns);
  report.coverage_trend = trend_stat(coverages, ns);
  report.fitted_C = *std::max_element(energies.begin(), energies.end());
  report.fitted_Cprime = *std::min_element(coverages.begin(), coverages.end());
  report.energy_bounded = report.energy_trend <= gamma;
  report.coverage_floored = report.coverage_trend >= -gamma && report.fitted_Cprime > 0.0;
  report.theorem_consistent = verdict(report.energy_bounded, report.coverage_floored, report.hypotheses_held);
  return report;
}

/// Summaries split by parameter combination, in first-seen order.
inline std::vector<std::pair<ParamMap, std::vector<RunSummary>>> group_by_params(std::span<const RunSummary> summaries) {
  std::vector<std::pair<ParamMap, std::vector<RunSummary>>> groups;
  for (const auto& s : summaries) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == s.params; });
    if (it == groups.end()) {
      groups.emplace_back(s.params, std::vector<RunSummary>{});
      it = std::prev(groups.end());
    }
    it->second.push_back(s);
  }
  return groups;
}

}  // namespace swarmcheck
