#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "swarmcheck/core.hpp"
#include "swarmcheck/metrics.hpp"
#include "swarmcheck/random.hpp"
#include "swarmcheck/spatial_grid.hpp"

namespace swarmcheck {

enum class ControllerKind { CuckerSmale, Boids, PotentialFlock, RandomWalk, Static };

inline constexpr std::string_view to_string(ControllerKind kind) noexcept {
  switch (kind) {
    case ControllerKind::CuckerSmale: return "cucker_smale";
    case ControllerKind::Boids: return "boids";
    case ControllerKind::PotentialFlock: return "potential_flock";
    case ControllerKind::RandomWalk: return "random_walk";
    case ControllerKind::Static: return "static";
  }
  return "unknown";
}

inline ControllerKind controller_kind_from_string(std::string_view name) {
  for (auto k : {ControllerKind::CuckerSmale, ControllerKind::Boids, ControllerKind::PotentialFlock,
                 ControllerKind::RandomWalk, ControllerKind::Static}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorKind::InvalidConfig, "unknown controller '" + std::string(name) + "'");
}

using ParamMap = std::map<std::string, double>;

/// Parameters every controller expects, with their defaults.
inline ParamMap default_params(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::CuckerSmale: return {{"lambda", 1.0}, {"beta", 0.5}};
    case ControllerKind::Boids:
      return {{"w_sep", 1.5}, {"w_align", 1.0}, {"w_coh", 0.8},
              {"r_sep", 1.0}, {"r_neigh", 3.0}, {"w_mig", 0.5}};
    case ControllerKind::PotentialFlock:
      return {{"d_star", 1.0}, {"k_pot", 1.0}, {"k_align", 0.5}, {"r_cut", 2.5}, {"w_mig", 0.5}};
    case ControllerKind::RandomWalk: return {{"sigma", 1.0}};
    case ControllerKind::Static: return {};
  }
  return {};
}

inline Vec default_migration_velocity(std::size_t dim) {
  Vec v(dim);
  if (dim > 0) v[0] = 1.0;
  return v;
}

struct ControllerSpec {
  ControllerKind kind = ControllerKind::Static;
  ParamMap params;
  Vec migration_velocity;

  /// Controller of `kind` with every parameter at its default; `overrides` replace
  /// individual entries.
  static ControllerSpec make(ControllerKind kind, std::size_t dim, const ParamMap& overrides = {}) {
    ControllerSpec spec{kind, default_params(kind), default_migration_velocity(dim)};
    for (const auto& [name, value] : overrides) spec.params[name] = value;
    return spec;
  }

  double param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) {
      throw Error(ErrorKind::InvalidConfig,
                  "controller " + std::string(to_string(kind)) + " is missing parameter '" + name + "'");
    }
    return it->second;
  }
};

/// Checks parameter completeness, names, finiteness and sign constraints.
inline void validate(const ControllerSpec& spec, std::size_t dim) {
  const ParamMap expected = default_params(spec.kind);
  const std::string who = "controller " + std::string(to_string(spec.kind));
  for (const auto& [name, value] : spec.params) {
    if (!expected.contains(name)) throw Error(ErrorKind::InvalidConfig, who + " has no parameter '" + name + "'");
    if (!std::isfinite(value)) throw Error(ErrorKind::InvalidConfig, who + " parameter '" + name + "' is not finite");
  }
  for (const auto& [name, value] : expected) spec.param(name);
  if (spec.migration_velocity.dim() != dim || !spec.migration_velocity.finite()) {
    throw Error(ErrorKind::InvalidConfig, who + " migration_velocity must be finite with dimension " +
                                              std::to_string(dim));
  }
  auto positive = [&](const char* name) {
    if (!(spec.param(name) > 0.0)) throw Error(ErrorKind::InvalidConfig, who + " needs " + name + " > 0");
  };
  auto non_negative = [&](const char* name) {
    if (!(spec.param(name) >= 0.0)) throw Error(ErrorKind::InvalidConfig, who + " needs " + name + " >= 0");
  };
  switch (spec.kind) {
    case ControllerKind::CuckerSmale:
      non_negative("lambda");
      non_negative("beta");
      break;
    case ControllerKind::Boids:
      positive("r_sep");
      positive("r_neigh");
      for (const char* w : {"w_sep", "w_align", "w_coh", "w_mig"}) non_negative(w);
      break;
    case ControllerKind::PotentialFlock:
      positive("d_star");
      if (!(spec.param("r_cut") > spec.param("d_star"))) {
        throw Error(ErrorKind::InvalidConfig, who + " needs r_cut > d_star");
      }
      break;
    case ControllerKind::RandomWalk: non_negative("sigma"); break;
    case ControllerKind::Static: break;
  }
}

using Accelerations = std::vector<Vec>;

inline Accelerations zero_accelerations(const SwarmState& state) {
  return Accelerations(state.size(), Vec(state.dim));
}

/// Alignment dynamics: a_i = (lambda/n) sum_j psi(|x_j - x_i|) (v_j - v_i),
/// psi(r) = (1 + r^2)^-beta. Exact O(n^2) sum; each pair contributes with
/// opposite signs to its two agents.
inline Accelerations cucker_smale_accel(const SwarmState& state, double lambda, double beta) {
  Accelerations acc = zero_accelerations(state);
  const std::size_t n = state.size();
  const std::size_t d = state.dim;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ai = state.agents[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& aj = state.agents[j];
      const double r2 = squared_distance(ai.position, aj.position);
      const double psi = std::pow(1.0 + r2, -beta);
      for (std::size_t k = 0; k < d; ++k) {
        const double term = psi * (aj.velocity[k] - ai.velocity[k]);
        acc[i][k] += term;
        acc[j][k] -= term;
      }
    }
  }
  const double scale = lambda / static_cast<double>(n);
  for (auto& a : acc) a *= scale;
  return acc;
}

namespace detail {

inline void require_separated(double r2, std::size_t i, std::size_t j) {
  if (r2 < kSeparationFloor * kSeparationFloor) {
    throw Error(ErrorKind::DegenerateDistance,
                "agents " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  }
}

/// Per-agent neighbor sums of velocity and position over pairs within `radius`.
struct NeighborMeans {
  std::vector<Vec> velocity_sum;
  std::vector<Vec> position_sum;
  std::vector<std::size_t> count;

  explicit NeighborMeans(const SwarmState& s)
      : velocity_sum(s.size(), Vec(s.dim)), position_sum(s.size(), Vec(s.dim)), count(s.size(), 0) {}

  void add(const SwarmState& s, std::size_t i, std::size_t j) {
    velocity_sum[i] += s.agents[j].velocity;
    velocity_sum[j] += s.agents[i].velocity;
    position_sum[i] += s.agents[j].position;
    position_sum[j] += s.agents[i].position;
    ++count[i];
    ++count[j];
  }
};

}  // namespace detail

struct BoidsParams {
  double w_sep = 1.5;
  double w_align = 1.0;
  double w_coh = 0.8;
  double r_sep = 1.0;
  double r_neigh = 3.0;
  double w_mig = 0.5;
};

/// Separation + alignment + cohesion + migration steering. Empty neighborhoods
/// contribute nothing to their term.
inline Accelerations boids_accel(const SwarmState& state, const BoidsParams& p, const Vec& migration_velocity) {
  Accelerations acc = zero_accelerations(state);
  const std::vector<Vec> positions = state.positions();
  const double r_sep2 = p.r_sep * p.r_sep;
  const double r_neigh2 = p.r_neigh * p.r_neigh;
  detail::NeighborMeans neigh(state);
  std::vector<Vec> sep(state.size(), Vec(state.dim));

  for (const auto& [i, j] : neighbors_within(positions, std::max(p.r_sep, p.r_neigh))) {
    const double r2 = squared_distance(positions[i], positions[j]);
    detail::require_separated(r2, i, j);
    if (r2 <= r_sep2) {
      const Vec push = (positions[i] - positions[j]) / r2;
      sep[i] += push;
      sep[j] -= push;
    }
    if (r2 <= r_neigh2) neigh.add(state, i, j);
  }

  for (std::size_t i = 0; i < state.size(); ++i) {
    const auto& agent = state.agents[i];
    Vec& a = acc[i];
    a += p.w_sep * sep[i];
    if (neigh.count[i] > 0) {
      const double inv = 1.0 / static_cast<double>(neigh.count[i]);
      a += p.w_align * (neigh.velocity_sum[i] * inv - agent.velocity);
      a += p.w_coh * (neigh.position_sum[i] * inv - agent.position);
    }
    a += p.w_mig * (migration_velocity - agent.velocity);
  }
  return acc;
}

struct PotentialParams {
  double d_star = 1.0;
  double k_pot = 1.0;
  double k_align = 0.5;
  double r_cut = 2.5;
  double w_mig = 0.5;
};

/// Lattice-forming pair potential. Within r_cut each pair pushes apart with
/// magnitude k_pot (1/r - r/d_star^2): repulsive below d_star, attractive above,
/// zero at d_star. Adds alignment to the neighborhood mean velocity and
/// migration feedback.
inline Accelerations potential_flock_accel(const SwarmState& state, const PotentialParams& p,
                                           const Vec& migration_velocity) {
  Accelerations acc = zero_accelerations(state);
  const std::vector<Vec> positions = state.positions();
  const double inv_dstar2 = 1.0 / (p.d_star * p.d_star);
  detail::NeighborMeans neigh(state);

  for (const auto& [i, j] : neighbors_within(positions, p.r_cut)) {
    const double r2 = squared_distance(positions[i], positions[j]);
    detail::require_separated(r2, i, j);
    const double r = std::sqrt(r2);
    const double magnitude = p.k_pot * (1.0 / r - r * inv_dstar2);
    const Vec force = (positions[i] - positions[j]) * (magnitude / r);
    acc[i] += force;
    acc[j] -= force;
    neigh.add(state, i, j);
  }

  for (std::size_t i = 0; i < state.size(); ++i) {
    const auto& agent = state.agents[i];
    if (neigh.count[i] > 0) {
      acc[i] += p.k_align * (neigh.velocity_sum[i] / static_cast<double>(neigh.count[i]) - agent.velocity);
    }
    acc[i] += p.w_mig * (migration_velocity - agent.velocity);
  }
  return acc;
}

/// Independent N(0, sigma^2) per component, drawn in agent order from `rng`.
inline Accelerations random_walk_accel(const SwarmState& state, double sigma, Rng& rng) {
  Accelerations acc = zero_accelerations(state);
  if (sigma == 0.0) return acc;
  std::normal_distribution<double> gauss(0.0, sigma);
  for (auto& a : acc)
    for (std::size_t k = 0; k < state.dim; ++k) a[k] = gauss(rng);
  return acc;
}

inline Accelerations static_accel(const SwarmState& state) { return zero_accelerations(state); }

/// Dispatches on the controller kind. `rng` is consumed only by random_walk.
inline Accelerations accelerations(const SwarmState& state, const ControllerSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case ControllerKind::CuckerSmale:
      return cucker_smale_accel(state, spec.param("lambda"), spec.param("beta"));
    case ControllerKind::Boids:
      return boids_accel(state,
                         {spec.param("w_sep"), spec.param("w_align"), spec.param("w_coh"), spec.param("r_sep"),
                          spec.param("r_neigh"), spec.param("w_mig")},
                         spec.migration_velocity);
    case ControllerKind::PotentialFlock:
      return potential_flock_accel(state,
                                   {spec.param("d_star"), spec.param("k_pot"), spec.param("k_align"),
                                    spec.param("r_cut"), spec.param("w_mig")},
                                   spec.migration_velocity);
    case ControllerKind::RandomWalk: return random_walk_accel(state, spec.param("sigma"), rng);
    case ControllerKind::Static: return static_accel(state);
  }
  return static_accel(state);
}

}  // namespace swarmcheck
