#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "astute/dataset.hpp"
#include "astute/rules.hpp"

namespace astute {

using WeightVector = std::vector<double>;

/// k-nearest-neighbour weight function. Ties on the k-th distance go to the
/// lowest training index.
class KnnModel {
 public:
  KnnModel(Dataset training, std::size_t k, Metric metric);

  const Dataset& training() const noexcept { return training_; }
  std::size_t k() const noexcept { return k_; }
  Metric metric() const noexcept { return metric_; }

  /// Indices of the k nearest training points, nearest first.
  std::vector<std::size_t> neighbors(std::span<const double> x) const;
  std::size_t nearest(std::span<const double> x) const;
  WeightVector weights(std::span<const double> x) const;
  Label predict(std::span<const double> x) const;

 private:
  void check_dim(std::span<const double> x) const;

  Dataset training_;
  std::size_t k_;
  Metric metric_;
};

/// Throws std::invalid_argument on an empty dataset.
KnnModel knn_train(Dataset ds, const SizeRule& k_rule = SizeRule::constant(1),
                   Metric metric = Metric::L2);

}  // namespace astute
