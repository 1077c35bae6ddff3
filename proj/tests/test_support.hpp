#pragma once

// Brute-force oracles and random generators shared by the test binaries.
// Oracles deliberately take a different route from the library (ordered
// pairs, long double accumulation) so agreement is meaningful.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "swarmcheck/core.hpp"

namespace swarmcheck::testing {

inline std::vector<Vec> random_points(std::mt19937_64& rng, std::size_t n, std::size_t d, double extent) {
  std::uniform_real_distribution<double> u(0.0, extent);
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < n; ++i) {
    Vec p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = u(rng);
    pts.push_back(std::move(p));
  }
  return pts;
}

inline Vec random_unit(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g;
  Vec v(d);
  double s = 0;
  do {
    for (std::size_t k = 0; k < d; ++k) v[k] = g(rng);
    s = std::sqrt(dot(v, v));
  } while (s < 1e-6);
  return v / s;
}

inline SwarmState make_state(const std::vector<Vec>& positions, const std::vector<Vec>& velocities = {}) {
  SwarmState s;
  s.dim = positions.empty() ? 0 : positions.front().dim();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    s.agents.push_back({positions[i], velocities.empty() ? Vec(s.dim) : velocities[i]});
  }
  return s;
}

/// Energy over ordered pairs i != j, halved, in long double.
inline double brute_energy(const std::vector<Vec>& p) {
  long double sum = 0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      long double r2 = 0;
      for (std::size_t k = 0; k < p[i].dim(); ++k) {
        const long double diff = static_cast<long double>(p[i][k]) - p[j][k];
        r2 += diff * diff;
      }
      sum += 1.0L / r2;
    }
  }
  return static_cast<double>(sum / 2.0L / (static_cast<long double>(n) * (n - 1) / 2.0L));
}

inline double brute_min_separation(const std::vector<Vec>& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (i != j) best = std::min(best, std::sqrt(squared_distance(p[i], p[j])));
  return best;
}

inline std::set<std::pair<std::size_t, std::size_t>> brute_pairs(const std::vector<Vec>& p, double r) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (squared_distance(p[i], p[j]) <= r * r) out.emplace(i, j);
  return out;
}

/// Mercedes-Benz frame: three unit vectors 120 degrees apart in R^2.
inline std::vector<Vec> mercedes_benz() {
  std::vector<Vec> f;
  for (int k = 0; k < 3; ++k) {
    const double a = std::numbers::pi / 2 + 2 * std::numbers::pi * k / 3;
    f.push_back(Vec{std::cos(a), std::sin(a)});
  }
  return f;
}

inline std::vector<Vec> unit_square() { return {Vec{0, 0}, Vec{1, 0}, Vec{0, 1}, Vec{1, 1}}; }

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Random rotation of R^2 or R^3 as a function on vectors.
struct Rotation {
  std::vector<double> m;  // row-major d x d
  std::size_t d;
  Vec operator()(const Vec& v) const {
    Vec out(d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out[r] += m[r * d + c] * v[c];
    return out;
  }
};

/// Orthonormal matrix by Gram-Schmidt on Gaussian columns.
inline Rotation random_orthogonal(std::mt19937_64& rng, std::size_t d) {
  std::vector<Vec> cols;
  while (cols.size() < d) {
    Vec v = random_unit(rng, d);
    for (const auto& c : cols) v -= dot(v, c) * c;
    const double s = std::sqrt(dot(v, v));
    if (s < 1e-3) continue;
    cols.push_back(v / s);
  }
  Rotation rot{std::vector<double>(d * d), d};
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) rot.m[r * d + c] = cols[c][r];
  return rot;
}

}  // namespace swarmcheck::testing
