#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "swarmcheck/error.hpp"

namespace swarmcheck {

/// A point or direction in real Euclidean space R^d. SI units throughout; the
/// role (position or velocity) is carried by the owning field, not the type.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t dim, double fill = 0.0) : c_(dim, fill) {}
  Vec(std::initializer_list<double> values) : c_(values) {}
  explicit Vec(std::vector<double> values) : c_(std::move(values)) {}

  std::size_t dim() const noexcept { return c_.size(); }
  double operator[](std::size_t k) const noexcept { return c_[k]; }
  double& operator[](std::size_t k) noexcept { return c_[k]; }

  std::span<const double> data() const noexcept { return c_; }
  std::span<double> data() noexcept { return c_; }
  const std::vector<double>& components() const noexcept { return c_; }

  bool finite() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](double v) { return std::isfinite(v); });
  }

  Vec& operator+=(const Vec& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Vec& operator*=(double s) noexcept {
    for (double& v : c_) v *= s;
    return *this;
  }
  Vec& operator/=(double s) noexcept {
    for (double& v : c_) v /= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator/(Vec a, double s) { return a /= s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }
  friend bool operator==(const Vec&, const Vec&) = default;

 private:
  void require_same_dim(const Vec& o) const {
    if (o.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "vector dimensions differ");
  }

  std::vector<double> c_;
};

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}
inline double dot(const Vec& a, const Vec& b) noexcept { return dot(a.data(), b.data()); }

inline double squared_norm(const Vec& a) noexcept { return dot(a, a); }
inline double norm(const Vec& a) noexcept { return std::sqrt(squared_norm(a)); }

inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}
inline double squared_distance(const Vec& a, const Vec& b) noexcept {
  return squared_distance(a.data(), b.data());
}
inline double distance(const Vec& a, const Vec& b) noexcept { return std::sqrt(squared_distance(a, b)); }

struct AgentState {
  Vec position;
  Vec velocity;
};

/// Snapshot of the whole swarm. Agent index is the agent id and never changes
/// during a run.
struct SwarmState {
  double time = 0.0;
  std::vector<AgentState> agents;
  std::size_t dim = 0;

  std::size_t size() const noexcept { return agents.size(); }

  std::vector<Vec> positions() const {
    std::vector<Vec> out;
    out.reserve(agents.size());
    for (const auto& a : agents) out.push_back(a.position);
    return out;
  }
  std::vector<Vec> velocities() const {
    std::vector<Vec> out;
    out.reserve(agents.size());
    for (const auto& a : agents) out.push_back(a.velocity);
    return out;
  }
};

/// Axis-aligned cube.
struct Cube {
  Vec center;
  double side = 0.0;
};

namespace detail {

inline std::size_t common_dim(std::span<const Vec> vs) {
  if (vs.empty()) return 0;
  const std::size_t d = vs.front().dim();
  for (const auto& v : vs) {
    if (v.dim() != d) throw Error(ErrorKind::DimensionMismatch, "vectors disagree on dimension");
  }
  return d;
}

inline Vec mean_of(std::span<const Vec> vs) {
  const std::size_t d = common_dim(vs);
  Vec sum(d);
  for (const auto& v : vs) sum += v;
  return sum / static_cast<double>(vs.size());
}

inline void require_agents(std::size_t n, std::size_t at_least) {
  if (n < at_least) {
    throw Error(ErrorKind::NotEnoughAgents,
                "need at least " + std::to_string(at_least) + " agents, got " + std::to_string(n));
  }
}

}  // namespace detail

inline Vec centroid(std::span<const Vec> positions) {
  detail::require_agents(positions.size(), 1);
  return detail::mean_of(positions);
}

inline Vec centroid(const SwarmState& state) { return centroid(state.positions()); }

inline Vec mean_velocity(const SwarmState& state) {
  detail::require_agents(state.size(), 1);
  return detail::mean_of(state.velocities());
}

/// Smallest axis-aligned cube holding every position: side is the largest
/// per-axis extent, center the midpoint of the bounding box.
inline Cube bounding_cube(std::span<const Vec> positions) {
  detail::require_agents(positions.size(), 1);
  const std::size_t d = detail::common_dim(positions);
  Vec lo = positions.front();
  Vec hi = positions.front();
  for (const auto& p : positions) {
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  Cube cube{Vec(d), 0.0};
  for (std::size_t k = 0; k < d; ++k) {
    cube.center[k] = lo[k] + 0.5 * (hi[k] - lo[k]);
    cube.side = std::max(cube.side, hi[k] - lo[k]);
  }
  return cube;
}

inline Cube bounding_cube(const SwarmState& state) { return bounding_cube(state.positions()); }

}  // namespace swarmcheck
