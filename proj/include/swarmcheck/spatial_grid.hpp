#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "swarmcheck/core.hpp"

namespace swarmcheck {

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Uniform hash grid over a point set. Any two points within `cell` of each
/// other lie in the same or adjacent cells, so a query only scans the 3^d
/// block around its own cell.
class UniformGrid {
 public:
  UniformGrid(std::span<const Vec> points, double cell) : points_(points), cell_(cell) {
    dim_ = detail::common_dim(points);
    usable_ = cell > 0.0 && std::isfinite(cell) && dim_ > 0 && block_size() <= std::max<std::size_t>(points.size(), 27);
    if (!usable_) return;
    Key key(dim_);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!cell_of(points[i].data(), key)) {
        usable_ = false;
        cells_.clear();
        return;
      }
      cells_[key].push_back(i);
    }
  }

  /// False when the geometry makes the grid pointless or unsafe (huge cell
  /// index range, too many neighbor cells for d); callers fall back to a scan.
  bool usable() const noexcept { return usable_; }

  /// Calls f(j) for every indexed point in the cells adjacent to `query`.
  /// Visits a superset of the points within `cell` of the query, each once.
  template <class F>
  void for_each_candidate(std::span<const double> query, F&& f) const {
    Key base(dim_);
    if (!cell_of(query, base)) return;
    Key probe(dim_);
    std::vector<int> offset(dim_, -1);
    while (true) {
      for (std::size_t k = 0; k < dim_; ++k) probe[k] = base[k] + offset[k];
      if (auto it = cells_.find(probe); it != cells_.end()) {
        for (std::size_t j : it->second) f(j);
      }
      std::size_t k = 0;
      while (k < dim_ && offset[k] == 1) offset[k++] = -1;
      if (k == dim_) break;
      ++offset[k];
    }
  }

 private:
  using Key = std::vector<std::int64_t>;

  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept {
      std::uint64_t h = 0x9e3779b97f4a7c15ULL;
      for (std::int64_t c : key) {
        h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  std::size_t block_size() const noexcept {
    std::size_t b = 1;
    for (std::size_t k = 0; k < dim_; ++k) {
      b *= 3;
      if (b > (std::size_t{1} << 40)) break;
    }
    return b;
  }

  bool cell_of(std::span<const double> p, Key& key) const noexcept {
    constexpr double kMaxIndex = 1e15;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double c = std::floor(p[k] / cell_);
      if (!(std::abs(c) < kMaxIndex)) return false;
      key[k] = static_cast<std::int64_t>(c);
    }
    return true;
  }

  std::span<const Vec> points_;
  double cell_;
  std::size_t dim_ = 0;
  bool usable_ = false;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> cells_;
};

/// All unordered pairs (i < j) with |x_i - x_j| <= r, sorted lexicographically.
inline std::vector<IndexPair> neighbors_within(std::span<const Vec> positions, double r) {
  std::vector<IndexPair> pairs;
  const double r2 = r * r;
  const UniformGrid grid(positions, r);
  if (grid.usable()) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
      grid.for_each_candidate(positions[i].data(), [&](std::size_t j) {
        if (j > i && squared_distance(positions[i], positions[j]) <= r2) pairs.emplace_back(i, j);
      });
    }
    std::sort(pairs.begin(), pairs.end());
  } else {
    for (std::size_t i = 0; i < positions.size(); ++i) {
      for (std::size_t j = i + 1; j < positions.size(); ++j) {
        if (squared_distance(positions[i], positions[j]) <= r2) pairs.emplace_back(i, j);
      }
    }
  }
  return pairs;
}

}  // namespace swarmcheck
