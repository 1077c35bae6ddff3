// swarmcheck: simulate swarms, sweep them over swarm sizes, and report whether
// bounded energy keeps coverage bounded below.
//
// Exit codes: 0 success, 1 config/usage error, 2 runtime or numeric failure,
// 3 `report --strict` found a violated verdict.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "swarmcheck/swarmcheck.hpp"

namespace fs = std::filesystem;
using namespace swarmcheck;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitViolated = 3;

/// --seed beats SWARMCHECK_SEED, which beats the config file.
std::optional<std::uint64_t> seed_override(const std::optional<std::uint64_t>& flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("SWARMCHECK_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidConfig, "SWARMCHECK_SEED must be an unsigned integer");
  }
  return std::nullopt;
}

SeriesFormat parse_format(const std::string& s) {
  if (s == "csv") return SeriesFormat::Csv;
  if (s == "jsonl") return SeriesFormat::Jsonl;
  throw Error(ErrorKind::InvalidConfig, "--format must be csv or jsonl");
}

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::string format = "csv";
  bool svg = false;
  std::optional<double> delta;
  std::optional<double> coverage_delta;
};

int simulate(const SimulateArgs& args) {
  RunConfig config = run_config_from_json(read_json_file(args.config));
  if (auto s = seed_override(args.seed)) config.seed = *s;
  if (args.delta) config.delta = *args.delta;
  if (args.coverage_delta) config.coverage_delta = *args.coverage_delta;
  const SeriesFormat format = parse_format(args.format);
  validate(config);

  const RunRecord record = run(config);
  write_run_files(record, args.out, "run", format);
  if (args.svg) {
    write_svg(run_series(record), {"swarm diagnostics over time", "t [s]", "value"}, fs::path(args.out) / "run.svg");
  }
  std::cerr << "simulate: " << record.samples.size() << " samples, " << record.violations.size()
            << " violations, " << record.wall_time << " s\n";
  return 0;
}

struct SweepArgs {
  std::string config;
  std::size_t jobs = 1;
  std::string out = "sweep_out";
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
};

std::string cell_stem(const SweepCell& cell) {
  return "n" + std::to_string(cell.n) + "_p" + std::to_string(cell.param_index) + "_s" + std::to_string(cell.seed);
}

int sweep(const SweepArgs& args) {
  SweepConfig config = sweep_config_from_json(read_json_file(args.config));
  if (auto s = seed_override(args.seed)) config.base.seed = *s;
  const SeriesFormat format = parse_format(args.format);

  const SweepResult result = run_sweep(config, args.jobs, true);
  const fs::path out(args.out);
  write_text_file(out / "sweep.json", to_json(config).dump(2) + "\n");
  std::ostringstream summaries;
  write_summaries_jsonl(result.summaries, summaries);
  write_text_file(out / "summaries.jsonl", summaries.str());
  std::size_t failed = 0;
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    if (result.records[i]) write_run_files(*result.records[i], out / "runs", cell_stem(result.cells[i]), format);
    failed += result.summaries[i].failed ? 1 : 0;
  }
  std::cerr << "sweep: " << result.cells.size() << " runs, " << failed << " failed\n";
  return 0;
}

struct ReportArgs {
  std::string in;
  std::string out;
  bool svg = false;
  bool strict = false;
  double gamma = kDefaultGamma;
};

int report(const ReportArgs& args) {
  const fs::path summaries_path = fs::path(args.in) / "summaries.jsonl";
  std::ifstream in(summaries_path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + summaries_path.string());
  const auto summaries = read_summaries_jsonl(in);
  const auto groups = build_report_groups(summaries, args.gamma);

  const fs::path out = args.out.empty() ? fs::path(args.in) / "report.json" : fs::path(args.out);
  write_text_file(out, report_json(groups, args.gamma).dump(2) + "\n");
  if (args.svg) {
    std::vector<Series> series;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const std::string suffix = groups.size() > 1 ? " #" + std::to_string(g) : "";
      for (auto& s : report_series(groups[g].report, suffix)) series.push_back(std::move(s));
    }
    fs::path svg_path = out;
    svg_path.replace_extension(".svg");
    write_svg(series, {"scaling with swarm size", "log2(n)", "log2(median)"}, svg_path);
  }
  const Verdict verdict = overall_verdict(groups);
  std::cout << "theorem_consistent: " << to_string(verdict) << '\n';
  return args.strict && verdict == Verdict::Violated ? kExitViolated : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swarmcheck: swarm reliability diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run one simulation and write its metric time series");
  sim_cmd->add_option("--config", sim.config, "Run config JSON")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--seed", sim.seed, "Seed override");
  sim_cmd->add_option("--out", sim.out, "Output directory")->capture_default_str();
  sim_cmd->add_option("--format", sim.format, "csv or jsonl")->capture_default_str();
  sim_cmd->add_flag("--svg", sim.svg, "Also write run.svg");
  sim_cmd->add_option("--delta", sim.delta, "Separation resolution delta");
  sim_cmd->add_option("--coverage-delta", sim.coverage_delta, "Coverage ball radius (defaults to delta)");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep over swarm sizes");
  sweep_cmd->add_option("--config", sw.config, "Sweep config JSON")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--jobs", sw.jobs, "Parallel runs")->capture_default_str()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", sw.out, "Output directory")->capture_default_str();
  sweep_cmd->add_option("--seed", sw.seed, "Base seed override");
  sweep_cmd->add_option("--format", sw.format, "csv or jsonl")->capture_default_str();

  ReportArgs rep;
  auto* report_cmd = app.add_subcommand("report", "Aggregate a sweep into a robustness report");
  report_cmd->add_option("--in", rep.in, "Sweep output directory")->required()->check(CLI::ExistingDirectory);
  report_cmd->add_option("--out", rep.out, "Report path (default <in>/report.json)");
  report_cmd->add_flag("--svg", rep.svg, "Also write an SVG next to the report");
  report_cmd->add_flag("--strict", rep.strict, "Exit 3 when the verdict is violated");
  report_cmd->add_option("--gamma", rep.gamma, "Trend tolerance per doubling of n")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sim_cmd) return simulate(sim);
    if (*sweep_cmd) return sweep(sw);
    if (*report_cmd) return report(rep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::InvalidConfig:
      case ErrorKind::InsufficientData:
      case ErrorKind::BadDelta:
      case ErrorKind::DimensionMismatch:
        return kExitUsage;
      default:
        return kExitRuntime;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
