#include "astute/histogram.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace astute {

namespace {

constexpr std::size_t kMaxHistogramDim = 16;
constexpr double kRootInflation = 1.0 + 1e-9;

}  // namespace

Point Cell::center() const {
  Point c = lo;
  for (std::size_t j = 0; j < dim(); ++j) c[j] += 0.5 * side;
  return c;
}

bool Cell::contains(std::span<const double> x) const noexcept {
  if (x.size() != dim()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < lo[j] || x[j] >= hi(j)) return false;
  }
  return true;
}

Box Cell::closure() const {
  Box b{lo, lo};
  for (std::size_t j = 0; j < dim(); ++j) b.hi[j] = hi(j);
  return b;
}

HistogramModel::HistogramModel(Dataset training, std::size_t threshold, const Cell& root)
    : training_(std::move(training)), threshold_(std::max<std::size_t>(threshold, 1)) {
  if (training_.empty()) throw std::invalid_argument("histogram: empty training set");
  if (training_.dim() > kMaxHistogramDim) {
    throw std::invalid_argument("histogram: dimension above " + std::to_string(kMaxHistogramDim));
  }
  if (root.dim() != training_.dim() || !(root.side > 0.0)) {
    throw std::invalid_argument("histogram: invalid root cell");
  }
  nodes_.push_back(Node{root});
  build();
}

std::size_t HistogramModel::child_slot(const Cell& cell, std::span<const double> x) const noexcept {
  std::size_t slot = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] >= cell.lo[j] + 0.5 * cell.side) slot |= std::size_t{1} << j;
  }
  return slot;
}

void HistogramModel::build() {
  const std::size_t d = training_.dim();
  const std::size_t fanout = std::size_t{1} << d;

  struct Pending {
    std::size_t node;
    std::vector<std::size_t> members;
    std::size_t depth;
  };
  std::vector<std::size_t> all(training_.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!nodes_[0].cell.contains(training_.point(i))) {
      throw std::invalid_argument("histogram: training point " + std::to_string(i) +
                                  " lies outside the root cell");
    }
    all[i] = i;
  }

  std::vector<Pending> stack;
  stack.push_back({0, std::move(all), 0});
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();

    if (cur.members.size() <= threshold_ || cur.depth >= kMaxDepth) {
      Leaf leaf{cur.node, std::move(cur.members), 0};
      for (std::size_t i : leaf.members) leaf.vote += to_int(training_.label(i));
      nodes_[cur.node].leaf = static_cast<std::int64_t>(leaves_.size());
      leaves_.push_back(std::move(leaf));
      continue;
    }

    const Cell parent = nodes_[cur.node].cell;
    const std::size_t first = nodes_.size();
    nodes_[cur.node].first_child = static_cast<std::int64_t>(first);
    for (std::size_t slot = 0; slot < fanout; ++slot) {
      Cell child{parent.lo, 0.5 * parent.side};
      for (std::size_t j = 0; j < d; ++j) {
        if (slot & (std::size_t{1} << j)) child.lo[j] = parent.lo[j] + 0.5 * parent.side;
      }
      nodes_.push_back(Node{std::move(child)});
    }

    std::vector<std::vector<std::size_t>> parts(fanout);
    for (std::size_t i : cur.members) parts[child_slot(parent, training_.point(i))].push_back(i);
    // Reverse push keeps leaves in slot order.
    for (std::size_t slot = fanout; slot-- > 0;) {
      stack.push_back({first + slot, std::move(parts[slot]), cur.depth + 1});
    }
  }
}

void HistogramModel::check_dim(std::span<const double> x) const {
  if (x.size() != training_.dim()) {
    throw std::invalid_argument("histogram: query dimension mismatch");
  }
}

std::optional<std::size_t> HistogramModel::leaf_index(std::span<const double> x) const {
  check_dim(x);
  if (!root().contains(x)) return std::nullopt;
  std::size_t node = 0;
  while (nodes_[node].first_child >= 0) {
    node = static_cast<std::size_t>(nodes_[node].first_child) + child_slot(nodes_[node].cell, x);
  }
  return static_cast<std::size_t>(nodes_[node].leaf);
}

std::span<const std::size_t> HistogramModel::leaf_members(std::size_t leaf) const {
  return leaves_.at(leaf).members;
}

std::vector<LabeledCell> HistogramModel::leaf_cells() const {
  std::vector<LabeledCell> out;
  out.reserve(leaves_.size());
  for (const Leaf& leaf : leaves_) {
    out.push_back({nodes_[leaf.node].cell, label_from_vote(static_cast<double>(leaf.vote))});
  }
  return out;
}

WeightVector HistogramModel::weights(std::span<const double> x) const {
  WeightVector w(training_.size(), 0.0);
  const auto leaf = leaf_index(x);
  if (!leaf) return w;
  const auto& members = leaves_[*leaf].members;
  if (members.empty()) return w;
  const double share = 1.0 / static_cast<double>(members.size());
  for (std::size_t i : members) w[i] = share;
  return w;
}

Label HistogramModel::predict(std::span<const double> x) const {
  const auto leaf = leaf_index(x);
  if (!leaf) return Label::Negative;
  return label_from_vote(static_cast<double>(leaves_[*leaf].vote));
}

Cell histogram_root(const Dataset& ds, const std::optional<Box>& anchor) {
  if (ds.empty()) throw std::invalid_argument("histogram: empty training set");
  const std::size_t d = ds.dim();
  Point lo(d, std::numeric_limits<double>::infinity());
  Point hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto x = ds.point(i);
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], x[j]);
      hi[j] = std::max(hi[j], x[j]);
    }
  }
  if (anchor) {
    if (anchor->dim() != d) throw std::invalid_argument("histogram: anchor dimension mismatch");
    for (std::size_t j = 0; j < d; ++j) {
      if (lo[j] < anchor->lo[j] || hi[j] > anchor->hi[j]) {
        throw std::invalid_argument("histogram: training data outside the anchor box");
      }
    }
    lo = anchor->lo;
    hi = anchor->hi;
  }
  double extent = 0.0;
  for (std::size_t j = 0; j < d; ++j) extent = std::max(extent, hi[j] - lo[j]);
  if (!(extent > 0.0)) extent = 1.0;  // all points coincide

  Cell root{lo, extent * kRootInflation};
  // Inflation can vanish in rounding when |lo| >> extent.
  for (std::size_t j = 0; j < d; ++j) {
    while (!(hi[j] < root.hi(j))) root.side *= kRootInflation;
  }
  return root;
}

HistogramModel histogram_train(Dataset ds, const SizeRule& k_rule,
                               const std::optional<Box>& anchor) {
  const Cell root = histogram_root(ds, anchor);
  const std::size_t threshold = k_rule(ds.size());
  return HistogramModel(std::move(ds), threshold, root);
}

}  // namespace astute
