#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "swarmcheck/core.hpp"
#include "swarmcheck/random.hpp"
#include "swarmcheck/spatial_grid.hpp"
#include "swarmcheck/symmetric_eigen.hpp"

namespace swarmcheck {

/// Distances below this are treated as coincident agents (meters).
inline constexpr double kSeparationFloor = 1e-12;
/// Cubes thinner than this are degenerate; coverage is then 1 by convention.
inline constexpr double kSideFloor = 1e-9;
inline constexpr std::size_t kDefaultCoverageSamples = 65536;

/// Optimal frame bounds: extreme eigenvalues of the frame operator.
struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;

  friend bool operator==(const FrameBounds&, const FrameBounds&) = default;
};

/// Monte Carlo estimate of the fraction of the bounding cube within `delta`
/// of some agent.
struct CoverageEstimate {
  double value = 1.0;
  double std_err = 0.0;
  std::size_t samples = 1;
  double delta = 1.0;

  friend bool operator==(const CoverageEstimate&, const CoverageEstimate&) = default;
};

/// One row of diagnostics at a sample time. `energy` is empty when two agents
/// coincide.
struct MetricsSample {
  double time = 0.0;
  std::optional<double> energy;
  double frame_potential = 0.0;
  FrameBounds frame_bounds;
  CoverageEstimate coverage;
  double min_separation = 0.0;
  double max_velocity_deviation = 0.0;
  double cube_side = 0.0;

  friend bool operator==(const MetricsSample&, const MetricsSample&) = default;
};

/// Mean inverse-square pair interaction, (1 / C(n,2)) * sum_{i<j} 1/|x_i - x_j|^2.
/// Pairs are visited in lexicographic (i, j) order.
inline double energy(std::span<const Vec> positions, double separation_floor = kSeparationFloor) {
  detail::require_agents(positions.size(), 2);
  detail::common_dim(positions);
  const double floor2 = separation_floor * separation_floor;
  double sum = 0.0;
  const std::size_t n = positions.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r2 = squared_distance(positions[i], positions[j]);
      if (r2 < floor2) {
        throw Error(ErrorKind::DegenerateDistance,
                    "agents " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
      sum += 1.0 / r2;
    }
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return sum / pairs;
}

/// Sum over all ordered pairs (self pairs included) of <f_i, f_j>^2.
inline double frame_potential(std::span<const Vec> vectors) {
  detail::require_agents(vectors.size(), 1);
  detail::common_dim(vectors);
  double fp = 0.0;
  for (const auto& fi : vectors) {
    for (const auto& fj : vectors) {
      const double ip = dot(fi, fj);
      fp += ip * ip;
    }
  }
  return fp;
}

/// Frame operator S = sum_j f_j f_j^T, row-major d x d.
inline std::vector<double> frame_operator(std::span<const Vec> vectors) {
  const std::size_t d = detail::common_dim(vectors);
  std::vector<double> s(d * d, 0.0);
  for (const auto& f : vectors) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) s[r * d + c] += f[r] * f[c];
  }
  return s;
}

inline FrameBounds frame_bounds(std::span<const Vec> vectors) {
  detail::require_agents(vectors.size(), 1);
  const std::size_t d = detail::common_dim(vectors);
  if (d == 0) throw Error(ErrorKind::DimensionMismatch, "frame vectors must have dimension >= 1");
  const auto eig = symmetric_eigenvalues(frame_operator(vectors), d);
  // S is positive semidefinite; tiny negative eigenvalues are rounding.
  const double lower = std::max(0.0, eig.front());
  const double upper = std::max(lower, eig.back());
  return {lower, upper};
}

/// Fraction of the bounding cube lying within `delta` of at least one agent,
/// estimated from `samples` uniform points drawn inside the cube. Both the
/// sample points and their order depend only on `seed`, so for fixed seed the
/// estimate is non-decreasing in delta.
inline CoverageEstimate coverage_ratio(std::span<const Vec> positions, double delta, std::size_t samples,
                                       std::uint64_t seed) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::BadDelta, "coverage radius must be positive and finite");
  }
  if (samples == 0) throw Error(ErrorKind::InvalidConfig, "coverage needs at least one sample");
  const Cube cube = bounding_cube(positions);
  if (cube.side < kSideFloor) return {1.0, 0.0, samples, delta};

  const std::size_t d = cube.center.dim();
  const std::size_t n = positions.size();
  const double delta2 = delta * delta;
  constexpr std::size_t kGridThreshold = 16;
  std::optional<UniformGrid> grid;
  if (n > kGridThreshold) {
    grid.emplace(positions, delta);
    if (!grid->usable()) grid.reset();
  }

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  std::vector<double> point(d);
  std::size_t covered = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t k = 0; k < d; ++k) point[k] = cube.center[k] + unit(rng) * cube.side;
    bool hit = false;
    if (grid) {
      grid->for_each_candidate(point, [&](std::size_t j) {
        if (!hit && squared_distance(point, positions[j].data()) <= delta2) hit = true;
      });
    } else {
      for (std::size_t j = 0; j < n && !hit; ++j) hit = squared_distance(point, positions[j].data()) <= delta2;
    }
    covered += hit ? 1 : 0;
  }
  const double m = static_cast<double>(samples);
  const double p = static_cast<double>(covered) / m;
  return {p, std::sqrt(p * (1.0 - p) / m), samples, delta};
}

inline double min_separation(std::span<const Vec> positions) {
  detail::require_agents(positions.size(), 2);
  detail::common_dim(positions);
  double best2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions.size(); ++i)
    for (std::size_t j = i + 1; j < positions.size(); ++j)
      best2 = std::min(best2, squared_distance(positions[i], positions[j]));
  return std::sqrt(best2);
}

/// max_j |v_j - v_avg|; the coherence hypothesis asks this to stay below c * delta.
inline double max_velocity_deviation(const SwarmState& state) {
  const Vec avg = mean_velocity(state);
  double worst = 0.0;
  for (const auto& a : state.agents) worst = std::max(worst, distance(a.velocity, avg));
  return worst;
}

/// Positions shifted so their centroid is the origin.
inline std::vector<Vec> centered(std::span<const Vec> positions) {
  const Vec c = centroid(positions);
  std::vector<Vec> out(positions.begin(), positions.end());
  for (auto& p : out) p -= c;
  return out;
}

/// Fills every diagnostic for one snapshot. Frame metrics use centroid-centered
/// positions when `center_frames` is set, raw positions otherwise. Coincident
/// agents leave `energy` empty instead of failing.
inline MetricsSample sample_metrics(const SwarmState& state, double delta, std::size_t mc_samples,
                                    std::uint64_t seed, bool center_frames = true) {
  detail::require_agents(state.size(), 2);
  const std::vector<Vec> positions = state.positions();

  MetricsSample row;
  row.time = state.time;
  try {
    row.energy = energy(positions);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateDistance) throw;
  }
  const std::vector<Vec> frame = center_frames ? centered(positions) : positions;
  row.frame_potential = frame_potential(frame);
  row.frame_bounds = frame_bounds(frame);
  row.coverage = coverage_ratio(positions, delta, mc_samples, seed);
  row.min_separation = min_separation(positions);
  row.max_velocity_deviation = max_velocity_deviation(state);
  row.cube_side = bounding_cube(positions).side;
  return row;
}

}  // namespace swarmcheck
