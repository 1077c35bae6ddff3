#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace swarmcheck {

/// Eigenvalues (ascending) of a dense symmetric d x d matrix stored row-major,
/// by cyclic Jacobi rotations. Intended for the small d of swarm positions.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t d,
                                                 double tol = 1e-12, int max_sweeps = 100) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * d + j]; };

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) s += 2.0 * at(i, j) * at(i, j);
    return std::sqrt(s);
  };
  auto full_norm = [&] {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
  };

  const double scale = full_norm();
  for (int sweep = 0; sweep < max_sweeps && off_norm() > tol * std::max(scale, 1e-300); ++sweep) {
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing a(p,q); the smaller root of t^2 + 2 theta t - 1 = 0.
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < d; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(d);
  for (std::size_t i = 0; i < d; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace swarmcheck
