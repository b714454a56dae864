#include "astute/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace astute {

namespace {

void require_dim(std::span<const double> x, const Box& box) {
  if (x.size() != box.dim() || box.hi.dim() != box.dim()) {
    throw std::invalid_argument("box: dimension mismatch");
  }
}

}  // namespace

bool Box::contains(std::span<const double> x) const noexcept {
  if (x.size() != dim()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < lo[j] || x[j] > hi[j]) return false;
  }
  return true;
}

Box linf_ball(std::span<const double> center, double radius) {
  Box b{Point(center), Point(center)};
  for (std::size_t j = 0; j < center.size(); ++j) {
    b.lo[j] -= radius;
    b.hi[j] += radius;
  }
  return b;
}

Box intersect(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("intersect: dimension mismatch");
  Box out = a;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    out.lo[j] = std::max(a.lo[j], b.lo[j]);
    out.hi[j] = std::min(a.hi[j], b.hi[j]);
  }
  return out;
}

bool is_empty(const Box& box) noexcept {
  for (std::size_t j = 0; j < box.dim(); ++j) {
    if (box.lo[j] > box.hi[j]) return true;
  }
  return false;
}

Point clamp(std::span<const double> x, const Box& box) {
  require_dim(x, box);
  Point p(x);
  for (std::size_t j = 0; j < x.size(); ++j) p[j] = std::clamp(x[j], box.lo[j], box.hi[j]);
  return p;
}

double linf_distance_to_box(std::span<const double> x, const Box& box) {
  require_dim(x, box);
  double m = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    m = std::max({m, box.lo[j] - x[j], x[j] - box.hi[j]});
  }
  return m;
}

double l2_min_distance_to_box(std::span<const double> x, const Box& box) {
  require_dim(x, box);
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double g = std::max({0.0, box.lo[j] - x[j], x[j] - box.hi[j]});
    s += g * g;
  }
  return std::sqrt(s);
}

double l2_max_distance_to_box(std::span<const double> x, const Box& box) {
  require_dim(x, box);
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double g = std::max(std::abs(x[j] - box.lo[j]), std::abs(x[j] - box.hi[j]));
    s += g * g;
  }
  return std::sqrt(s);
}

}  // namespace astute
