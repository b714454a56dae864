#pragma once

// Slow, independent reference implementations. None of these call into the
// library's algorithms beyond data access, so agreement is meaningful.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "astute/dataset.hpp"
#include "astute/geometry.hpp"

namespace astute::oracle {

inline double dist(std::span<const double> a, std::span<const double> b, Metric m) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = std::abs(a[j] - b[j]);
    acc = m == Metric::Linf ? std::max(acc, d) : acc + d * d;
  }
  return m == Metric::Linf ? acc : std::sqrt(acc);
}

inline double min_interclass(const Dataset& ds, Metric m) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = 0; j < ds.size(); ++j)
      if (ds.label(i) != ds.label(j)) best = std::min(best, dist(ds.point(i), ds.point(j), m));
  return best;
}

inline std::vector<std::pair<std::size_t, std::size_t>> conflict_pairs(const Dataset& ds, double r,
                                                                     Metric m) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.label(i) != Label::Positive) continue;
    for (std::size_t j = 0; j < ds.size(); ++j) {
      if (ds.label(j) == Label::Negative && dist(ds.point(i), ds.point(j), m) <= 2.0 * r) {
        out.emplace_back(i, j);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Size of the largest r-separated subset by enumerating all 2^n subsets.
inline std::size_t max_separated_subset(const Dataset& ds, double r, Metric m) {
  const std::size_t n = ds.size();
  std::vector<std::uint32_t> clash(n, 0);
  for (const auto& [i, j] : conflict_pairs(ds, r, m)) {
    clash[i] |= 1u << j;
    clash[j] |= 1u << i;
  }
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if ((s >> i & 1u) && (clash[i] & s)) ok = false;
    }
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(s)));
  }
  return best;
}

/// Maximum matching size by exhaustive recursion over left vertices.
inline std::size_t max_matching_size(const std::vector<std::vector<std::size_t>>& adjacency) {
  const auto rec = [&](auto& self, std::size_t i, std::uint64_t used) -> std::size_t {
    if (i == adjacency.size()) return 0;
    std::size_t best = self(self, i + 1, used);
    for (std::size_t r : adjacency[i]) {
      if (used >> r & 1u) continue;
      best = std::max(best, 1 + self(self, i + 1, used | (std::uint64_t{1} << r)));
    }
    return best;
  };
  return rec(rec, 0, 0);
}

/// k-NN weights by fully sorting (distance, index).
inline std::vector<double> knn_weights(const Dataset& ds, std::span<const double> x, std::size_t k,
                                       Metric m) {
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < ds.size(); ++i) order.emplace_back(dist(ds.point(i), x, m), i);
  std::sort(order.begin(), order.end());
  std::vector<double> w(ds.size(), 0.0);
  for (std::size_t i = 0; i < k; ++i) w[order[i].second] = 1.0 / static_cast<double>(k);
  return w;
}

/// Minimum of c.v over {A v <= b} in 3 variables by enumerating every vertex
/// (intersection of 3 constraint planes). Assumes the feasible set is bounded.
struct Plane {
  std::array<double, 3> a;
  double b;
};

inline std::optional<std::array<double, 3>> solve3(const Plane& p, const Plane& q, const Plane& s) {
  const auto& A = p.a;
  const auto& B = q.a;
  const auto& C = s.a;
  const double det = A[0] * (B[1] * C[2] - B[2] * C[1]) - A[1] * (B[0] * C[2] - B[2] * C[0]) +
                     A[2] * (B[0] * C[1] - B[1] * C[0]);
  if (std::abs(det) < 1e-12) return std::nullopt;
  const auto cramer = [&](std::size_t col) {
    std::array<std::array<double, 3>, 3> m{A, B, C};
    m[0][col] = p.b;
    m[1][col] = q.b;
    m[2][col] = s.b;
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  return std::array<double, 3>{cramer(0) / det, cramer(1) / det, cramer(2) / det};
}

inline std::optional<double> vertex_min(const std::array<double, 3>& c,
                                        const std::vector<Plane>& planes, double slack = 1e-9) {
  std::optional<double> best;
  for (std::size_t i = 0; i < planes.size(); ++i)
    for (std::size_t j = i + 1; j < planes.size(); ++j)
      for (std::size_t k = j + 1; k < planes.size(); ++k) {
        const auto v = solve3(planes[i], planes[j], planes[k]);
        if (!v) continue;
        bool feasible = true;
        for (const Plane& p : planes) {
          const double lhs = p.a[0] * (*v)[0] + p.a[1] * (*v)[1] + p.a[2] * (*v)[2];
          if (lhs > p.b + slack * (1.0 + std::abs(p.b))) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        const double val = c[0] * (*v)[0] + c[1] * (*v)[1] + c[2] * (*v)[2];
        if (!best || val < *best) best = val;
      }
  return best;
}

/// Minimal LINF radius at which 1-NN (L2 neighbours, 2-D) changes its label
/// away from y, by vertex enumeration of every Voronoi-cell LP. nullopt when
/// no opposite cell meets the radius-r ball.
inline std::optional<double> nn1_min_radius(const Dataset& train, std::span<const double> x,
                                            Label y, double r) {
  std::optional<double> best;
  for (std::size_t z = 0; z < train.size(); ++z) {
    if (train.label(z) == y) continue;
    const auto pz = train.point(z);
    std::vector<Plane> planes{
        {{1, 0, -1}, x[0]}, {{-1, 0, -1}, -x[0]}, {{0, 1, -1}, x[1]}, {{0, -1, -1}, -x[1]},
        {{0, 0, 1}, r},     {{0, 0, -1}, 0.0}};
    for (std::size_t p = 0; p < train.size(); ++p) {
      if (p == z) continue;
      const auto pp = train.point(p);
      const double rhs = pp[0] * pp[0] + pp[1] * pp[1] - pz[0] * pz[0] - pz[1] * pz[1];
      planes.push_back({{2 * (pp[0] - pz[0]), 2 * (pp[1] - pz[1]), 0.0}, rhs});
    }
    const auto v = vertex_min({0, 0, 1}, planes);
    if (v && (!best || *v < *best)) best = v;
  }
  return best;
}

/// Lower bound on the LINF gap between the two noiseless half-moon arcs:
/// exhaustive over `samples` parameter values per arc, minus twice the
/// largest LINF step between neighbouring samples.
inline double half_moon_gap_lower_bound(std::size_t samples) {
  std::vector<std::array<double, 2>> a(samples), b(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = std::numbers::pi * static_cast<double>(i) / static_cast<double>(samples - 1);
    a[i] = {std::cos(t), std::sin(t)};
    b[i] = {1.0 - std::cos(t), 0.5 - std::sin(t)};
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : a)
    for (const auto& q : b)
      best = std::min(best, std::max(std::abs(p[0] - q[0]), std::abs(p[1] - q[1])));
  const double step = std::numbers::pi / static_cast<double>(samples - 1);
  return best - step;  // each arc point is within step/2 of a sample
}

}  // namespace astute::oracle
