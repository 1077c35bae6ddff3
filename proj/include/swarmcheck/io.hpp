#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarmcheck/engine.hpp"
#include "swarmcheck/harness.hpp"

namespace swarmcheck {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kCsvHeader =
    "t,energy,frame_potential,frame_A,frame_B,coverage,coverage_stderr,min_sep,max_vdev,cube_side";

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Config (de)serialization. Field names mirror the C++ structs.
// ---------------------------------------------------------------------------

namespace detail {

inline Json vec_to_json(const Vec& v) { return Json(v.components()); }

inline Vec vec_from_json(const Json& j, std::string_view field) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidConfig, std::string(field) + " must be an array of numbers");
  std::vector<double> c;
  for (const auto& x : j) {
    if (!x.is_number()) throw Error(ErrorKind::InvalidConfig, std::string(field) + " must be an array of numbers");
    c.push_back(x.get<double>());
  }
  return Vec(std::move(c));
}

/// Rejects keys outside `allowed`, naming the offending field.
inline void check_keys(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, std::string(where) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorKind::InvalidConfig, "unknown field '" + std::string(where) + "." + key + "'");
    }
  }
}

template <class T>
void read_field(const Json& j, const char* key, T& out, std::string_view where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::InvalidConfig, "field '" + std::string(where) + "." + key + "' has the wrong type");
  }
}

/// Doubles that JSON cannot carry (inf, nan) become null.
inline Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline double number_or_inf(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace detail

inline Json to_json(const Scenario& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  j["spacing"] = s.spacing;
  j["extent"] = s.extent;
  j["cluster_gap"] = s.cluster_gap;
  j["gap_growth"] = to_string(s.gap_growth);
  j["spacing_scale"] = to_string(s.spacing_scale);
  j["initial_velocity"] = detail::vec_to_json(s.initial_velocity);
  j["jitter"] = s.jitter;
  j["velocity_jitter"] = s.velocity_jitter;
  return j;
}

inline Scenario scenario_from_json(const Json& j) {
  detail::check_keys(j,
                     {"kind", "spacing", "extent", "cluster_gap", "gap_growth", "spacing_scale", "initial_velocity",
                      "jitter", "velocity_jitter"},
                     "scenario");
  Scenario s;
  std::string text;
  if (j.contains("kind")) {
    detail::read_field(j, "kind", text, "scenario");
    s.kind = scenario_kind_from_string(text);
  }
  if (j.contains("gap_growth")) {
    detail::read_field(j, "gap_growth", text, "scenario");
    s.gap_growth = gap_growth_from_string(text);
  }
  if (j.contains("spacing_scale")) {
    detail::read_field(j, "spacing_scale", text, "scenario");
    s.spacing_scale = spacing_scale_from_string(text);
  }
  detail::read_field(j, "spacing", s.spacing, "scenario");
  detail::read_field(j, "extent", s.extent, "scenario");
  detail::read_field(j, "cluster_gap", s.cluster_gap, "scenario");
  detail::read_field(j, "jitter", s.jitter, "scenario");
  detail::read_field(j, "velocity_jitter", s.velocity_jitter, "scenario");
  if (j.contains("initial_velocity")) s.initial_velocity = detail::vec_from_json(j["initial_velocity"], "scenario.initial_velocity");
  return s;
}

inline Json to_json(const ControllerSpec& c) {
  Json j;
  j["name"] = to_string(c.kind);
  Json params = Json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  j["params"] = std::move(params);
  j["migration_velocity"] = detail::vec_to_json(c.migration_velocity);
  return j;
}

inline ControllerSpec controller_from_json(const Json& j, std::size_t dim) {
  detail::check_keys(j, {"name", "params", "migration_velocity"}, "controller");
  std::string name = "static";
  detail::read_field(j, "name", name, "controller");
  ParamMap overrides;
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw Error(ErrorKind::InvalidConfig, "controller.params must be an object");
    for (const auto& [k, v] : j["params"].items()) {
      if (!v.is_number()) throw Error(ErrorKind::InvalidConfig, "controller.params." + k + " must be a number");
      overrides[k] = v.get<double>();
    }
  }
  ControllerSpec spec = ControllerSpec::make(controller_kind_from_string(name), dim, overrides);
  if (j.contains("migration_velocity"))
    spec.migration_velocity = detail::vec_from_json(j["migration_velocity"], "controller.migration_velocity");
  return spec;
}

inline Json to_json(const RunConfig& c) {
  Json j;
  j["scenario"] = to_json(c.scenario);
  j["controller"] = to_json(c.controller);
  j["n"] = c.n;
  j["d"] = c.d;
  j["dt"] = c.dt;
  j["steps"] = c.steps;
  j["metrics_every"] = c.metrics_every;
  j["delta"] = c.delta;
  j["coverage_delta"] = c.coverage_delta ? Json(*c.coverage_delta) : Json(nullptr);
  j["coherence_c"] = c.coherence_c;
  j["mc_samples"] = c.mc_samples;
  j["seed"] = c.seed;
  j["v_max"] = c.v_max;
  j["center_frames"] = c.center_frames;
  return j;
}

/// Missing fields keep their defaults; unknown fields are rejected. Validation
/// of values is left to `validate`.
inline RunConfig run_config_from_json(const Json& j) {
  detail::check_keys(j,
                     {"scenario", "controller", "n", "d", "dt", "steps", "metrics_every", "delta", "coverage_delta",
                      "coherence_c", "mc_samples", "seed", "v_max", "center_frames"},
                     "config");
  RunConfig c;
  detail::read_field(j, "d", c.d, "config");
  c.controller = ControllerSpec::make(ControllerKind::Static, c.d);
  if (j.contains("scenario")) c.scenario = scenario_from_json(j["scenario"]);
  if (j.contains("controller")) c.controller = controller_from_json(j["controller"], c.d);
  detail::read_field(j, "n", c.n, "config");
  detail::read_field(j, "dt", c.dt, "config");
  detail::read_field(j, "steps", c.steps, "config");
  detail::read_field(j, "metrics_every", c.metrics_every, "config");
  detail::read_field(j, "delta", c.delta, "config");
  if (j.contains("coverage_delta") && !j["coverage_delta"].is_null()) {
    double cd = 0.0;
    detail::read_field(j, "coverage_delta", cd, "config");
    c.coverage_delta = cd;
  }
  detail::read_field(j, "coherence_c", c.coherence_c, "config");
  detail::read_field(j, "mc_samples", c.mc_samples, "config");
  detail::read_field(j, "seed", c.seed, "config");
  detail::read_field(j, "v_max", c.v_max, "config");
  detail::read_field(j, "center_frames", c.center_frames, "config");
  return c;
}

inline Json to_json(const SweepConfig& s) {
  Json j;
  j["base"] = to_json(s.base);
  j["n_values"] = s.n_values;
  j["seeds_per_cell"] = s.seeds_per_cell;
  Json grid = Json::object();
  for (const auto& [k, v] : s.param_grid) grid[k] = v;
  j["param_grid"] = std::move(grid);
  return j;
}

inline SweepConfig sweep_config_from_json(const Json& j) {
  detail::check_keys(j, {"base", "n_values", "seeds_per_cell", "param_grid"}, "sweep");
  if (!j.contains("base")) throw Error(ErrorKind::InvalidConfig, "sweep config needs a 'base' run config");
  SweepConfig s;
  s.base = run_config_from_json(j["base"]);
  detail::read_field(j, "n_values", s.n_values, "sweep");
  detail::read_field(j, "seeds_per_cell", s.seeds_per_cell, "sweep");
  detail::read_field(j, "param_grid", s.param_grid, "sweep");
  return s;
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidConfig, path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Run output: CSV / JSONL time series plus a JSON sidecar.
// ---------------------------------------------------------------------------

/// 17 significant digits: enough to recover every double exactly.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_run_csv(const RunRecord& record, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : record.samples) {
    out << format_double(r.time) << ',' << format_double(r.energy.value_or(std::nan(""))) << ','
        << format_double(r.frame_potential) << ',' << format_double(r.frame_bounds.lower) << ','
        << format_double(r.frame_bounds.upper) << ',' << format_double(r.coverage.value) << ','
        << format_double(r.coverage.std_err) << ',' << format_double(r.min_separation) << ','
        << format_double(r.max_velocity_deviation) << ',' << format_double(r.cube_side) << '\n';
  }
}

/// Parses a file written by write_run_csv back into samples. Coverage sample
/// count and radius are not part of the CSV and come from the arguments.
inline std::vector<MetricsSample> read_run_csv(std::istream& in, std::size_t mc_samples, double delta) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error(ErrorKind::InvalidConfig, "unexpected CSV header");
  std::vector<MetricsSample> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell == "nan" ? std::nan("") : std::stod(cell));
    if (f.size() != 10) throw Error(ErrorKind::InvalidConfig, "CSV row has " + std::to_string(f.size()) + " fields");
    MetricsSample r;
    r.time = f[0];
    if (!std::isnan(f[1])) r.energy = f[1];
    r.frame_potential = f[2];
    r.frame_bounds = {f[3], f[4]};
    r.coverage = {f[5], f[6], mc_samples, delta};
    r.min_separation = f[7];
    r.max_velocity_deviation = f[8];
    r.cube_side = f[9];
    rows.push_back(r);
  }
  return rows;
}

inline Json to_json(const MetricsSample& r) {
  Json j;
  j["t"] = r.time;
  j["energy"] = r.energy ? Json(*r.energy) : Json(nullptr);
  j["frame_potential"] = r.frame_potential;
  j["frame_A"] = r.frame_bounds.lower;
  j["frame_B"] = r.frame_bounds.upper;
  j["coverage"] = r.coverage.value;
  j["coverage_stderr"] = r.coverage.std_err;
  j["coverage_samples"] = r.coverage.samples;
  j["coverage_delta"] = r.coverage.delta;
  j["min_sep"] = r.min_separation;
  j["max_vdev"] = r.max_velocity_deviation;
  j["cube_side"] = r.cube_side;
  return j;
}

inline void write_run_jsonl(const RunRecord& record, std::ostream& out) {
  for (const auto& r : record.samples) out << to_json(r).dump() << '\n';
}

/// Config plus hypothesis violations for one run. Wall time is left out
/// so repeated runs serialize identically.
inline Json run_sidecar(const RunRecord& record) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["prng_name"] = record.prng_name;
  j["config"] = to_json(record.config);
  j["sample_count"] = record.samples.size();
  Json violations = Json::array();
  for (const auto& v : record.violations) {
    Json row;
    row["step"] = v.step;
    row["t"] = v.time;
    row["kind"] = to_string(v.kind);
    violations.push_back(std::move(row));
  }
  j["violations"] = std::move(violations);
  j["violation_counts"] = {
      {"separation_breach", record.count(ViolationKind::SeparationBreach)},
      {"coherence_breach", record.count(ViolationKind::CoherenceBreach)},
      {"degenerate_energy", record.count(ViolationKind::DegenerateEnergy)},
  };
  return j;
}

enum class SeriesFormat { Csv, Jsonl };

/// Writes `<stem>.csv` or `<stem>.jsonl` and `<stem>.json` into `dir`.
inline void write_run_files(const RunRecord& record, const std::filesystem::path& dir, const std::string& stem,
                            SeriesFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto series_path = dir / (stem + (format == SeriesFormat::Csv ? ".csv" : ".jsonl"));
  {
    std::ofstream out(series_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + series_path.string());
    if (format == SeriesFormat::Csv) {
      write_run_csv(record, out);
    } else {
      write_run_jsonl(record, out);
    }
    if (!out) throw Error(ErrorKind::Io, "failed writing " + series_path.string());
  }
  const auto sidecar_path = dir / (stem + ".json");
  std::ofstream side(sidecar_path, std::ios::binary);
  if (!side) throw Error(ErrorKind::Io, "cannot write " + sidecar_path.string());
  side << run_sidecar(record).dump(2) << '\n';
  if (!side) throw Error(ErrorKind::Io, "failed writing " + sidecar_path.string());
}

// ---------------------------------------------------------------------------
// Sweep summaries and robustness report.
// ---------------------------------------------------------------------------

inline Json to_json(const RunSummary& s) {
  Json j;
  j["n"] = s.n;
  Json params = Json::object();
  for (const auto& [k, v] : s.params) params[k] = v;
  j["params"] = std::move(params);
  j["seed"] = s.seed;
  j["max_energy"] = detail::number_or_null(s.max_energy);
  j["min_coverage"] = s.min_coverage;
  j["min_separation_overall"] = detail::number_or_null(s.min_separation_overall);
  j["max_vdev_overall"] = s.max_vdev_overall;
  j["hypothesis_ok"] = s.hypothesis_ok;
  j["failed"] = s.failed;
  j["error"] = s.error;
  return j;
}

inline RunSummary summary_from_json(const Json& j) {
  RunSummary s;
  try {
    s.n = j.at("n").get<std::size_t>();
    for (const auto& [k, v] : j.at("params").items()) s.params[k] = v.get<double>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.max_energy = detail::number_or_inf(j.at("max_energy"));
    s.min_coverage = j.at("min_coverage").get<double>();
    s.min_separation_overall = detail::number_or_inf(j.at("min_separation_overall"));
    s.max_vdev_overall = j.at("max_vdev_overall").get<double>();
    s.hypothesis_ok = j.at("hypothesis_ok").get<bool>();
    s.failed = j.at("failed").get<bool>();
    s.error = j.at("error").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("malformed run summary: ") + e.what());
  }
  return s;
}

inline void write_summaries_jsonl(std::span<const RunSummary> summaries, std::ostream& out) {
  for (const auto& s : summaries) out << to_json(s).dump() << '\n';
}

inline std::vector<RunSummary> read_summaries_jsonl(std::istream& in) {
  std::vector<RunSummary> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(summary_from_json(Json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::InvalidConfig, std::string("malformed summaries line: ") + e.what());
    }
  }
  return out;
}

inline Json to_json(const RobustnessReport& r) {
  Json j;
  Json table = Json::array();
  for (const auto& a : r.per_n) {
    Json row;
    row["n"] = a.n;
    row["runs"] = a.runs;
    row["failed"] = a.failed;
    row["median_max_energy"] = detail::number_or_null(a.median_max_energy);
    row["median_min_coverage"] = a.median_min_coverage;
    table.push_back(std::move(row));
  }
  j["per_n"] = std::move(table);
  j["energy_trend"] = detail::number_or_null(r.energy_trend);
  j["coverage_trend"] = detail::number_or_null(r.coverage_trend);
  j["energy_bounded"] = r.energy_bounded;
  j["coverage_floored"] = r.coverage_floored;
  j["hypotheses_held"] = r.hypotheses_held;
  j["theorem_consistent"] = to_string(r.theorem_consistent);
  j["fitted_C"] = detail::number_or_null(r.fitted_C);
  j["fitted_Cprime"] = r.fitted_Cprime;
  return j;
}

/// One report per parameter combination.
struct ReportGroup {
  ParamMap params;
  RobustnessReport report;
};

/// Worst verdict across groups: any violated wins, then hypotheses_failed.
inline Verdict overall_verdict(std::span<const ReportGroup> groups) {
  Verdict v = Verdict::Consistent;
  for (const auto& g : groups) {
    if (g.report.theorem_consistent == Verdict::Violated) return Verdict::Violated;
    if (g.report.theorem_consistent == Verdict::HypothesesFailed) v = Verdict::HypothesesFailed;
  }
  return v;
}

inline std::vector<ReportGroup> build_report_groups(std::span<const RunSummary> summaries, double gamma) {
  std::vector<ReportGroup> groups;
  for (auto& [params, runs] : group_by_params(summaries)) groups.push_back({params, robustness_report(runs, gamma)});
  if (groups.empty()) throw Error(ErrorKind::InsufficientData, "n_values: no run summaries to report on");
  return groups;
}

inline Json report_json(std::span<const ReportGroup> groups, double gamma) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["gamma"] = gamma;
  j["theorem_consistent"] = to_string(overall_verdict(groups));
  Json list = Json::array();
  for (const auto& g : groups) {
    Json entry;
    Json params = Json::object();
    for (const auto& [k, v] : g.params) params[k] = v;
    entry["params"] = std::move(params);
    const Json body = to_json(g.report);
    for (const auto& [k, v] : body.items()) entry[k] = v;
    list.push_back(std::move(entry));
  }
  j["groups"] = std::move(list);
  return j;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

// ---------------------------------------------------------------------------
// SVG line charts.
// ---------------------------------------------------------------------------

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct ChartLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace detail

/// Standalone 800x600 SVG with one polyline per series. Non-finite points are
/// dropped. Throws when there is nothing to draw.
inline std::string render_svg(std::span<const Series> series, const ChartLabels& labels) {
  constexpr double kW = 800, kH = 600, kLeft = 80, kRight = 160, kTop = 50, kBottom = 60;
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo, y_lo = x_lo, y_hi = -x_lo;
  std::size_t drawable = 0;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
      ++drawable;
    }
  }
  if (series.empty() || drawable == 0) throw Error(ErrorKind::InvalidConfig, "chart needs at least one non-empty series");
  if (x_hi == x_lo) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (y_hi == y_lo) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * ph; };
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n"
      << "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << detail::xml_escape(labels.title) << "</text>\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text class=\"x-label\" x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 15
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << detail::xml_escape(labels.x_label)
      << "</text>\n"
      << "<text class=\"y-label\" x=\"20\" y=\"" << kTop + ph / 2 << "\" transform=\"rotate(-90 20 " << kTop + ph / 2
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << detail::xml_escape(labels.y_label)
      << "</text>\n";
  // Axis extremes as tick labels.
  svg << "<text x=\"" << kLeft << "\" y=\"" << kTop + ph + 18 << "\" font-family=\"sans-serif\" font-size=\"11\">"
      << format_double(x_lo) << "</text>\n"
      << "<text x=\"" << kLeft + pw << "\" y=\"" << kTop + ph + 18
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(x_hi) << "</text>\n"
      << "<text x=\"" << kLeft - 5 << "\" y=\"" << kTop + ph
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(y_lo) << "</text>\n"
      << "<text x=\"" << kLeft - 5 << "\" y=\"" << kTop + 10
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(y_hi) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kColors[i % std::size(kColors)];
    svg << "<polyline class=\"series\" data-name=\"" << detail::xml_escape(series[i].name) << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto& [x, y] : series[i].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      svg << (first ? "" : " ") << detail::fixed3(px(x)) << ',' << detail::fixed3(py(y));
      first = false;
    }
    svg << "\"/>\n";
    const double ly = kTop + 20 + 20.0 * static_cast<double>(i);
    svg << "<line x1=\"" << kW - kRight + 15 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kW - kRight + 35 << "\" y2=\""
        << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text class=\"legend\" x=\"" << kW - kRight + 40 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << detail::xml_escape(series[i].name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

/// Energy and coverage against time for one run.
inline std::vector<Series> run_series(const RunRecord& record) {
  Series e{"energy", {}}, c{"coverage", {}};
  for (const auto& r : record.samples) {
    if (r.energy) e.points.emplace_back(r.time, *r.energy);
    c.points.emplace_back(r.time, r.coverage.value);
  }
  return {e, c};
}

/// log2 of the per-n medians against log2(n); straight lines mean power laws.
inline std::vector<Series> report_series(const RobustnessReport& report, const std::string& suffix = "") {
  Series e{"median max energy" + suffix, {}}, c{"median min coverage" + suffix, {}};
  for (const auto& a : report.per_n) {
    const double x = std::log2(static_cast<double>(a.n));
    e.points.emplace_back(x, std::log2(std::max(a.median_max_energy, kTrendFloor)));
    c.points.emplace_back(x, std::log2(std::max(a.median_min_coverage, kTrendFloor)));
  }
  return {e, c};
}

/// Renders first, so nothing is written when rendering fails.
inline void write_svg(std::span<const Series> series, const ChartLabels& labels, const std::filesystem::path& path) {
  const std::string text = render_svg(series, labels);
  write_text_file(path, text);
}

}  // namespace swarmcheck
