#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "swarmcheck/core.hpp"
#include "swarmcheck/random.hpp"

namespace swarmcheck {

enum class ScenarioKind { Grid, Line, TwoClusters, UniformBox };
enum class GapGrowth { Fixed, LinearInN };
enum class SpacingScale { Fixed, InverseN };

inline constexpr std::string_view to_string(ScenarioKind k) noexcept {
  switch (k) {
    case ScenarioKind::Grid: return "grid";
    case ScenarioKind::Line: return "line";
    case ScenarioKind::TwoClusters: return "two_clusters";
    case ScenarioKind::UniformBox: return "uniform_box";
  }
  return "unknown";
}
inline constexpr std::string_view to_string(GapGrowth g) noexcept {
  return g == GapGrowth::Fixed ? "fixed" : "linear_in_n";
}
inline constexpr std::string_view to_string(SpacingScale s) noexcept {
  return s == SpacingScale::Fixed ? "fixed" : "inverse_n";
}

inline ScenarioKind scenario_kind_from_string(std::string_view s) {
  for (auto k : {ScenarioKind::Grid, ScenarioKind::Line, ScenarioKind::TwoClusters, ScenarioKind::UniformBox})
    if (to_string(k) == s) return k;
  throw Error(ErrorKind::InvalidConfig, "unknown scenario kind '" + std::string(s) + "'");
}
inline GapGrowth gap_growth_from_string(std::string_view s) {
  if (s == "fixed") return GapGrowth::Fixed;
  if (s == "linear_in_n") return GapGrowth::LinearInN;
  throw Error(ErrorKind::InvalidConfig, "unknown gap_growth '" + std::string(s) + "'");
}
inline SpacingScale spacing_scale_from_string(std::string_view s) {
  if (s == "fixed") return SpacingScale::Fixed;
  if (s == "inverse_n") return SpacingScale::InverseN;
  throw Error(ErrorKind::InvalidConfig, "unknown spacing_scale '" + std::string(s) + "'");
}

/// Initial-condition recipe. `spacing` drives the lattice-based kinds,
/// `extent` the uniform box. `spacing_scale = inverse_n` divides the spacing by
/// n; `gap_growth = linear_in_n` multiplies the cluster gap by n.
struct Scenario {
  ScenarioKind kind = ScenarioKind::Grid;
  double spacing = 1.0;
  double extent = 10.0;
  double cluster_gap = 10.0;
  GapGrowth gap_growth = GapGrowth::Fixed;
  SpacingScale spacing_scale = SpacingScale::Fixed;
  Vec initial_velocity;  ///< empty means zero
  double jitter = 0.0;
  double velocity_jitter = 0.0;
};

inline void validate(const Scenario& s, std::size_t dim) {
  if (!(s.spacing > 0.0) || !std::isfinite(s.spacing)) throw Error(ErrorKind::InvalidConfig, "scenario.spacing must be > 0");
  if (!(s.extent > 0.0) || !std::isfinite(s.extent)) throw Error(ErrorKind::InvalidConfig, "scenario.extent must be > 0");
  if (!(s.cluster_gap >= 0.0) || !std::isfinite(s.cluster_gap))
    throw Error(ErrorKind::InvalidConfig, "scenario.cluster_gap must be >= 0");
  if (!(s.jitter >= 0.0) || !(s.velocity_jitter >= 0.0))
    throw Error(ErrorKind::InvalidConfig, "scenario jitter values must be >= 0");
  if (s.initial_velocity.dim() != 0 && (s.initial_velocity.dim() != dim || !s.initial_velocity.finite()))
    throw Error(ErrorKind::InvalidConfig, "scenario.initial_velocity must have dimension " + std::to_string(dim));
}

namespace detail {

/// Smallest k with k^d >= n.
inline std::size_t lattice_side(std::size_t n, std::size_t d) {
  std::size_t k = 1;
  auto fits = [&](std::size_t side) {
    double cap = 1.0;
    for (std::size_t i = 0; i < d; ++i) cap *= static_cast<double>(side);
    return cap >= static_cast<double>(n);
  };
  while (!fits(k)) ++k;
  return k;
}

/// First n points of the k^d lattice at `spacing`, first axis varying fastest.
inline std::vector<Vec> lattice(std::size_t n, std::size_t d, double spacing) {
  const std::size_t k = lattice_side(n, d);
  std::vector<Vec> pts;
  pts.reserve(n);
  for (std::size_t m = 0; m < n; ++m) {
    Vec p(d);
    std::size_t rest = m;
    for (std::size_t axis = 0; axis < d; ++axis) {
      p[axis] = static_cast<double>(rest % k) * spacing;
      rest /= k;
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace detail

/// Builds the initial swarm for `scenario`. All randomness here draws from the
/// scenario stream of `seed`.
inline SwarmState make_scenario(const Scenario& scenario, std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::NotEnoughAgents, "scenario needs n >= 1");
  if (d == 0) throw Error(ErrorKind::InvalidConfig, "dimension must be >= 1");
  validate(scenario, d);
  Rng rng = make_rng(seed, Stream::Scenario);

  const double spacing =
      scenario.spacing_scale == SpacingScale::InverseN ? scenario.spacing / static_cast<double>(n) : scenario.spacing;

  std::vector<Vec> pts;
  switch (scenario.kind) {
    case ScenarioKind::Grid: pts = detail::lattice(n, d, spacing); break;
    case ScenarioKind::Line:
      for (std::size_t m = 0; m < n; ++m) {
        Vec p(d);
        p[0] = static_cast<double>(m) * spacing;
        pts.push_back(std::move(p));
      }
      break;
    case ScenarioKind::TwoClusters: {
      const std::size_t first = (n + 1) / 2;
      const std::size_t second = n / 2;
      pts = detail::lattice(first, d, spacing);
      if (second > 0) {
        auto other = detail::lattice(second, d, spacing);
        const double gap =
            scenario.gap_growth == GapGrowth::LinearInN ? scenario.cluster_gap * static_cast<double>(n) : scenario.cluster_gap;
        Vec shift = centroid(pts) - centroid(other);
        shift[0] += gap;
        for (auto& p : other) pts.push_back(p + shift);
      }
      break;
    }
    case ScenarioKind::UniformBox: {
      std::uniform_real_distribution<double> box(0.0, scenario.extent);
      for (std::size_t m = 0; m < n; ++m) {
        Vec p(d);
        for (std::size_t k = 0; k < d; ++k) p[k] = box(rng);
        pts.push_back(std::move(p));
      }
      break;
    }
  }

  if (scenario.jitter > 0.0) {
    std::uniform_real_distribution<double> jit(-scenario.jitter, scenario.jitter);
    for (auto& p : pts)
      for (std::size_t k = 0; k < d; ++k) p[k] += jit(rng);
  }

  const Vec v0 = scenario.initial_velocity.dim() == d ? scenario.initial_velocity : Vec(d);
  SwarmState state;
  state.dim = d;
  state.agents.reserve(n);
  std::uniform_real_distribution<double> vjit(-scenario.velocity_jitter, scenario.velocity_jitter);
  for (auto& p : pts) {
    Vec v = v0;
    if (scenario.velocity_jitter > 0.0)
      for (std::size_t k = 0; k < d; ++k) v[k] += vjit(rng);
    state.agents.push_back({std::move(p), std::move(v)});
  }
  return state;
}

}  // namespace swarmcheck
