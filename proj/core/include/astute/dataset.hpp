#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "astute/label.hpp"
#include "astute/metric.hpp"
#include "astute/point.hpp"

namespace astute {

struct LabeledPoint {
  Point point;
  Label label;

  bool operator==(const LabeledPoint&) const = default;
};

/// Labeled sample with contiguous row-major storage. Point indices are the
/// identity used by every tie-breaking rule downstream, so insertion order is
/// preserved.
class Dataset {
 public:
  explicit Dataset(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  /// Throws std::invalid_argument on dimension mismatch or non-finite coordinates.
  void add(std::span<const double> x, Label y);
  void add(const LabeledPoint& p) { add(p.point, p.label); }
  void reserve(std::size_t n);

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  Label label(std::size_t i) const noexcept { return labels_[i]; }
  LabeledPoint at(std::size_t i) const { return {Point(point(i)), labels_[i]}; }

  std::span<const Label> labels() const noexcept { return labels_; }
  std::span<const double> raw() const noexcept { return coords_; }
  std::size_t count(Label y) const noexcept;

  /// New dataset holding the given rows, in the given order.
  Dataset subset(std::span<const std::size_t> indices) const;
  /// Same points, labels replaced.
  Dataset relabeled(std::span<const Label> labels) const;

  bool operator==(const Dataset&) const = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<Label> labels_;
};

/// Smallest distance between two points of opposite labels; +infinity when
/// either class is absent.
double min_interclass_distance(const Dataset& ds, Metric metric);

}  // namespace astute
