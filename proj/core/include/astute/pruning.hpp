#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "astute/dataset.hpp"
#include "astute/model.hpp"

namespace astute {

/// Bipartite graph joining +1 points (left) to -1 points (right) whose
/// distance is at most 2r, i.e. every pair that violates r-separation.
struct ConflictGraph {
  std::vector<std::size_t> left;   // dataset indices of +1 points, ascending
  std::vector<std::size_t> right;  // dataset indices of -1 points, ascending
  std::vector<std::vector<std::size_t>> adjacency;  // left slot -> right slots, ascending

  std::size_t edge_count() const noexcept;
  /// Edges as (positive index, negative index) pairs in dataset indices.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
};

/// Throws std::invalid_argument unless r > 0.
ConflictGraph build_conflict_graph(const Dataset& ds, double r, Metric metric);

struct Matching {
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> mate_left;   // left slot -> right slot or kFree
  std::vector<std::size_t> mate_right;  // right slot -> left slot or kFree
  std::size_t size = 0;
};

/// Maximum-cardinality matching (Hopcroft-Karp). Deterministic for a given
/// vertex and adjacency order.
Matching max_matching(const ConflictGraph& graph);

/// Indices of a largest r-separated subset, with the matching size that
/// certifies optimality: kept.size() + matching_size == n.
struct PrunedSet {
  std::vector<std::size_t> kept;
  std::size_t matching_size = 0;
};

/// Maximum independent set of the conflict graph via Koenig's construction.
PrunedSet adv_prune(const Dataset& ds, double r, Metric metric);

/// True iff no opposite-label pair lies within distance 2r.
bool is_r_separated(const Dataset& ds, double r, Metric metric);

/// Prunes at radius r, then trains the configured classifier on what remains.
Model robust_nonpar_train(const Dataset& ds, const ClassifierConfig& config, double r,
                          Metric metric);

/// |adv_prune(ds, r)| / n: the best astuteness any classifier can reach on the
/// empirical distribution of ds.
double robust_accuracy_upper_bound(const Dataset& ds, double r, Metric metric);

}  // namespace astute
