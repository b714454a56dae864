#include "astute/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace astute {

Dataset::Dataset(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("Dataset: dimension must be positive");
}

void Dataset::add(std::span<const double> x, Label y) {
  if (x.size() != dim_) {
    throw std::invalid_argument("Dataset::add: expected dimension " + std::to_string(dim_) +
                                ", got " + std::to_string(x.size()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("Dataset::add: non-finite coordinate");
  }
  coords_.insert(coords_.end(), x.begin(), x.end());
  labels_.push_back(y);
}

void Dataset::reserve(std::size_t n) {
  coords_.reserve(n * dim_);
  labels_.reserve(n);
}

std::size_t Dataset::count(Label y) const noexcept {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), y));
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out(dim_);
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= size()) throw std::out_of_range("Dataset::subset: index out of range");
    out.add(point(i), labels_[i]);
  }
  return out;
}

Dataset Dataset::relabeled(std::span<const Label> labels) const {
  if (labels.size() != size()) throw std::invalid_argument("Dataset::relabeled: size mismatch");
  Dataset out = *this;
  std::copy(labels.begin(), labels.end(), out.labels_.begin());
  return out;
}

double min_interclass_distance(const Dataset& ds, Metric metric) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t d = ds.dim();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.label(i) != Label::Positive) continue;
    for (std::size_t j = 0; j < ds.size(); ++j) {
      if (ds.label(j) != Label::Negative) continue;
      best = std::min(best,
                      detail::distance_unchecked(metric, ds.point(i).data(), ds.point(j).data(), d));
    }
  }
  return best;
}

}  // namespace astute
