#include "astute/knn.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace astute {

KnnModel::KnnModel(Dataset training, std::size_t k, Metric metric)
    : training_(std::move(training)), k_(k), metric_(metric) {
  if (training_.empty()) throw std::invalid_argument("knn: empty training set");
  k_ = std::clamp<std::size_t>(k_, 1, training_.size());
}

void KnnModel::check_dim(std::span<const double> x) const {
  if (x.size() != training_.dim()) throw std::invalid_argument("knn: query dimension mismatch");
}

std::size_t KnnModel::nearest(std::span<const double> x) const {
  check_dim(x);
  std::size_t best = 0;
  double best_d = detail::distance_unchecked(metric_, x.data(), training_.point(0).data(),
                                             x.size());
  for (std::size_t i = 1; i < training_.size(); ++i) {
    const double d =
        detail::distance_unchecked(metric_, x.data(), training_.point(i).data(), x.size());
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::vector<std::size_t> KnnModel::neighbors(std::span<const double> x) const {
  if (k_ == 1) return {nearest(x)};
  check_dim(x);
  std::vector<std::pair<double, std::size_t>> order(training_.size());
  for (std::size_t i = 0; i < training_.size(); ++i) {
    order[i] = {detail::distance_unchecked(metric_, x.data(), training_.point(i).data(), x.size()),
                i};
  }
  // (distance, index) is a total order, so the k smallest are unique.
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k_), order.end());
  std::vector<std::size_t> out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = order[i].second;
  return out;
}

WeightVector KnnModel::weights(std::span<const double> x) const {
  WeightVector w(training_.size(), 0.0);
  const double share = 1.0 / static_cast<double>(k_);
  for (std::size_t i : neighbors(x)) w[i] = share;
  return w;
}

Label KnnModel::predict(std::span<const double> x) const {
  int vote = 0;
  for (std::size_t i : neighbors(x)) vote += to_int(training_.label(i));
  return label_from_vote(vote);
}

KnnModel knn_train(Dataset ds, const SizeRule& k_rule, Metric metric) {
  if (ds.empty()) throw std::invalid_argument("knn: empty training set");
  const std::size_t k = k_rule(ds.size());
  return KnnModel(std::move(ds), k, metric);
}

}  // namespace astute
