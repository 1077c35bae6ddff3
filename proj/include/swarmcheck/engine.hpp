#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarmcheck/controllers.hpp"
#include "swarmcheck/core.hpp"
#include "swarmcheck/metrics.hpp"
#include "swarmcheck/random.hpp"
#include "swarmcheck/scenario.hpp"

namespace swarmcheck {

/// Everything needed to reproduce one simulation. `delta` is the separation
/// resolution; coverage balls use `coverage_delta` when set, `delta` otherwise.
struct RunConfig {
  Scenario scenario;
  ControllerSpec controller = ControllerSpec::make(ControllerKind::Static, 2);
  std::size_t n = 16;
  std::size_t d = 2;
  double dt = 0.01;
  std::size_t steps = 1000;
  std::size_t metrics_every = 10;
  double delta = 1.0;
  std::optional<double> coverage_delta;
  double coherence_c = 0.1;
  std::size_t mc_samples = kDefaultCoverageSamples;
  std::uint64_t seed = 0;
  double v_max = 5.0;
  bool center_frames = true;

  double ball_radius() const noexcept { return coverage_delta.value_or(delta); }
};

inline void validate(const RunConfig& c) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
  if (c.n < 2) fail("n must be >= 2");
  if (c.d < 1) fail("d must be >= 1");
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) fail("dt must be > 0");
  if (c.metrics_every < 1) fail("metrics_every must be >= 1");
  if (!(c.delta > 0.0) || !std::isfinite(c.delta)) fail("delta must be > 0");
  if (c.coverage_delta && !(*c.coverage_delta > 0.0)) fail("coverage_delta must be > 0");
  if (!(c.coherence_c > 0.0) || !std::isfinite(c.coherence_c)) fail("coherence_c must be > 0");
  if (!(c.v_max > 0.0)) fail("v_max must be > 0");
  if (c.mc_samples < 1) fail("mc_samples must be >= 1");
  validate(c.scenario, c.d);
  validate(c.controller, c.d);
}

enum class ViolationKind { SeparationBreach, CoherenceBreach, DegenerateEnergy };

inline constexpr std::string_view to_string(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::SeparationBreach: return "separation_breach";
    case ViolationKind::CoherenceBreach: return "coherence_breach";
    case ViolationKind::DegenerateEnergy: return "degenerate_energy";
  }
  return "unknown";
}

struct Violation {
  std::size_t step = 0;
  double time = 0.0;
  ViolationKind kind = ViolationKind::SeparationBreach;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct RunRecord {
  RunConfig config;
  std::vector<MetricsSample> samples;
  std::vector<Violation> violations;
  double wall_time = 0.0;  ///< seconds; not part of any serialized output
  std::string prng_name{kPrngName};

  std::size_t count(ViolationKind kind) const {
    std::size_t c = 0;
    for (const auto& v : violations) c += v.kind == kind ? 1 : 0;
    return c;
  }
};

/// Semi-implicit Euler: v' = clamp(v + a dt, |v'| <= v_max), x' = x + v' dt.
/// Throws NumericBlowup when an acceleration, an unclamped velocity or the new
/// state is not finite.
inline SwarmState step(const SwarmState& state, const ControllerSpec& controller, double dt, double v_max,
                       Rng& rng) {
  const Accelerations acc = accelerations(state, controller, rng);
  SwarmState next = state;
  next.time = state.time + dt;
  for (std::size_t i = 0; i < next.size(); ++i) {
    auto& agent = next.agents[i];
    if (!acc[i].finite()) throw Error(ErrorKind::NumericBlowup, "non-finite acceleration for agent " + std::to_string(i));
    Vec v = agent.velocity + acc[i] * dt;
    const double speed = norm(v);
    if (!std::isfinite(speed)) throw Error(ErrorKind::NumericBlowup, "velocity overflow for agent " + std::to_string(i));
    if (speed > v_max) v *= v_max / speed;
    agent.position += v * dt;
    agent.velocity = std::move(v);
    if (!agent.position.finite() || !agent.velocity.finite()) {
      throw Error(ErrorKind::NumericBlowup, "non-finite state for agent " + std::to_string(i));
    }
  }
  return next;
}

/// Called with the state after initialization (step 0) and after every step.
using StepObserver = std::function<void(std::size_t step, const SwarmState&)>;

/// Runs `config` from its scenario. Metrics are sampled at step 0 and every
/// `metrics_every` steps; the separation and coherence hypotheses are checked
/// at those sample times only. Every sample uses the same coverage seed, so
/// unchanged geometry reproduces identical rows.
inline RunRecord run(const RunConfig& config, const StepObserver& observer = {}) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();

  RunRecord record;
  record.config = config;
  Rng dynamics = make_rng(config.seed, Stream::Dynamics);
  const std::uint64_t coverage_seed = mix_seed(config.seed, static_cast<std::uint64_t>(Stream::Coverage));
  const double coherence_limit = config.coherence_c * config.delta;

  auto sample = [&](std::size_t index, const SwarmState& s) {
    MetricsSample row =
        sample_metrics(s, config.ball_radius(), config.mc_samples, coverage_seed, config.center_frames);
    if (!row.energy) record.violations.push_back({index, s.time, ViolationKind::DegenerateEnergy});
    if (row.min_separation < config.delta) record.violations.push_back({index, s.time, ViolationKind::SeparationBreach});
    if (row.max_velocity_deviation >= coherence_limit)
      record.violations.push_back({index, s.time, ViolationKind::CoherenceBreach});
    record.samples.push_back(std::move(row));
  };

  SwarmState state = make_scenario(config.scenario, config.n, config.d, config.seed);
  if (observer) observer(0, state);
  sample(0, state);
  for (std::size_t s = 1; s <= config.steps; ++s) {
    try {
      state = step(state, config.controller, config.dt, config.v_max, dynamics);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NumericBlowup) throw;
      throw Error(ErrorKind::NumericBlowup, "step " + std::to_string(s) + ": " + e.message());
    }
    if (observer) observer(s, state);
    if (s % config.metrics_every == 0) sample(s, state);
  }

  record.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

}  // namespace swarmcheck
