#pragma once

#include <cstddef>
#include <span>

#include "astute/point.hpp"

namespace astute {

/// Closed axis-aligned box [lo, hi]. Used for bounded input spaces.
struct Box {
  Point lo;
  Point hi;

  std::size_t dim() const noexcept { return lo.dim(); }
  bool contains(std::span<const double> x) const noexcept;
  bool operator==(const Box&) const = default;
};

/// Box with lo = center - radius and hi = center + radius in every coordinate.
Box linf_ball(std::span<const double> center, double radius);

/// Intersection of two closed boxes; lo > hi in some coordinate means empty.
Box intersect(const Box& a, const Box& b);
bool is_empty(const Box& box) noexcept;

/// Euclidean projection of x onto the box (coordinate-wise clamp). The clamp
/// also realises the LINF distance to the box.
Point clamp(std::span<const double> x, const Box& box);

double linf_distance_to_box(std::span<const double> x, const Box& box);
double l2_min_distance_to_box(std::span<const double> x, const Box& box);
double l2_max_distance_to_box(std::span<const double> x, const Box& box);

}  // namespace astute
