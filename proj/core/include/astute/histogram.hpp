#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "astute/dataset.hpp"
#include "astute/geometry.hpp"
#include "astute/knn.hpp"
#include "astute/rules.hpp"

namespace astute {

/// Half-open axis-aligned hypercube [lo, lo + side)^d.
struct Cell {
  Point lo;
  double side = 0.0;

  std::size_t dim() const noexcept { return lo.dim(); }
  double hi(std::size_t j) const noexcept { return lo[j] + side; }
  Point center() const;
  bool contains(std::span<const double> x) const noexcept;
  /// The cell as a closed box (its closure).
  Box closure() const;

  bool operator==(const Cell&) const = default;
};

struct LabeledCell {
  Cell cell;
  Label label;
};

/// Recursive 2^d-ary histogram: a cell holding more than k_n training points
/// is split into 2^d equal children. Leaves vote by label sum; empty leaves and
/// points outside the root predict -1.
class HistogramModel {
 public:
  /// Depth at which splitting stops even if a cell is still over threshold
  /// (only reachable with many coincident points).
  static constexpr std::size_t kMaxDepth = 48;

  HistogramModel(Dataset training, std::size_t threshold, const Cell& root);

  const Dataset& training() const noexcept { return training_; }
  std::size_t threshold() const noexcept { return threshold_; }
  const Cell& root() const noexcept { return nodes_.front().cell; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  /// Index into leaf_cells() of the leaf containing x, nullopt outside the root.
  std::optional<std::size_t> leaf_index(std::span<const double> x) const;
  /// Training indices inside the leaf.
  std::span<const std::size_t> leaf_members(std::size_t leaf) const;
  std::vector<LabeledCell> leaf_cells() const;
  std::size_t leaf_count() const noexcept { return leaves_.size(); }

  WeightVector weights(std::span<const double> x) const;
  Label predict(std::span<const double> x) const;

 private:
  struct Node {
    Cell cell;
    std::int64_t first_child = -1;  // children are contiguous, 2^d of them
    std::int64_t leaf = -1;         // index into leaves_ for leaf nodes
  };
  struct Leaf {
    std::size_t node;
    std::vector<std::size_t> members;
    long vote = 0;
  };

  void build();
  std::size_t child_slot(const Cell& cell, std::span<const double> x) const noexcept;
  void check_dim(std::span<const double> x) const;

  Dataset training_;
  std::size_t threshold_;
  std::vector<Node> nodes_;
  std::vector<Leaf> leaves_;
};

/// Root cube: when `anchor` is given its min corner and largest extent are
/// used, otherwise the data bounding box; the side is inflated by (1 + 1e-9)
/// so every point lies strictly inside the half-open cube.
Cell histogram_root(const Dataset& ds, const std::optional<Box>& anchor = std::nullopt);

HistogramModel histogram_train(Dataset ds, const SizeRule& k_rule = SizeRule::ceil_sqrt(),
                               const std::optional<Box>& anchor = std::nullopt);

}  // namespace astute
