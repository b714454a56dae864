#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace astute {

/// A point in d-dimensional feature space.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Point(std::span<const double> coords)
      : coords_(coords.begin(), coords.end()) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<double> coords() noexcept { return coords_; }
  operator std::span<const double>() const noexcept { return coords_; }

  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

}  // namespace astute
