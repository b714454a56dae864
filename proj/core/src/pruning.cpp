#include "astute/pruning.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace astute {

std::size_t ConflictGraph::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& adj : adjacency) total += adj.size();
  return total;
}

std::vector<std::pair<std::size_t, std::size_t>> ConflictGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(edge_count());
  for (std::size_t a = 0; a < adjacency.size(); ++a) {
    for (std::size_t b : adjacency[a]) out.emplace_back(left[a], right[b]);
  }
  return out;
}

ConflictGraph build_conflict_graph(const Dataset& ds, double r, Metric metric) {
  if (!(r > 0.0)) throw std::invalid_argument("r: must be > 0");
  ConflictGraph g;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    (ds.label(i) == Label::Positive ? g.left : g.right).push_back(i);
  }
  g.adjacency.resize(g.left.size());
  const double limit = 2.0 * r;
  const std::size_t d = ds.dim();
  for (std::size_t a = 0; a < g.left.size(); ++a) {
    const double* p = ds.point(g.left[a]).data();
    for (std::size_t b = 0; b < g.right.size(); ++b) {
      // Separation requires distance > 2r, so equality is a conflict.
      if (detail::distance_unchecked(metric, p, ds.point(g.right[b]).data(), d) <= limit) {
        g.adjacency[a].push_back(b);
      }
    }
  }
  return g;
}

namespace {

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const ConflictGraph& g)
      : g_(g), dist_(g.left.size()), next_(g.left.size()) {
    m_.mate_left.assign(g.left.size(), Matching::kFree);
    m_.mate_right.assign(g.right.size(), Matching::kFree);
  }

  Matching run() {
    while (layer()) {
      std::fill(next_.begin(), next_.end(), 0);
      for (std::size_t u = 0; u < g_.left.size(); ++u) {
        if (m_.mate_left[u] == Matching::kFree && augment(u)) ++m_.size;
      }
    }
    return std::move(m_);
  }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  // BFS layering from all free left vertices; true if some free right vertex
  // is reachable.
  bool layer() {
    std::deque<std::size_t> queue;
    for (std::size_t u = 0; u < g_.left.size(); ++u) {
      if (m_.mate_left[u] == Matching::kFree) {
        dist_[u] = 0;
        queue.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : g_.adjacency[u]) {
        const std::size_t w = m_.mate_right[v];
        if (w == Matching::kFree) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  bool augment(std::size_t u) {
    const auto& adj = g_.adjacency[u];
    for (; next_[u] < adj.size(); ++next_[u]) {
      const std::size_t v = adj[next_[u]];
      const std::size_t w = m_.mate_right[v];
      if (w == Matching::kFree || (dist_[w] == dist_[u] + 1 && augment(w))) {
        m_.mate_left[u] = v;
        m_.mate_right[v] = u;
        ++next_[u];
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  const ConflictGraph& g_;
  Matching m_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> next_;
};

}  // namespace

Matching max_matching(const ConflictGraph& graph) { return HopcroftKarp(graph).run(); }

PrunedSet adv_prune(const Dataset& ds, double r, Metric metric) {
  const ConflictGraph g = build_conflict_graph(ds, r, metric);
  const Matching m = max_matching(g);

  // Alternating reachability from free left vertices. Reachable left plus
  // unreachable right is a maximum independent set (complement of the
  // Koenig vertex cover).
  std::vector<char> seen_left(g.left.size(), 0);
  std::vector<char> seen_right(g.right.size(), 0);
  std::deque<std::size_t> queue;
  for (std::size_t u = 0; u < g.left.size(); ++u) {
    if (m.mate_left[u] == Matching::kFree) {
      seen_left[u] = 1;
      queue.push_back(u);
    }
  }
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : g.adjacency[u]) {
      if (seen_right[v]) continue;
      seen_right[v] = 1;
      const std::size_t w = m.mate_right[v];
      if (w != Matching::kFree && !seen_left[w]) {
        seen_left[w] = 1;
        queue.push_back(w);
      }
    }
  }

  PrunedSet out;
  out.matching_size = m.size;
  for (std::size_t u = 0; u < g.left.size(); ++u) {
    if (seen_left[u]) out.kept.push_back(g.left[u]);
  }
  for (std::size_t v = 0; v < g.right.size(); ++v) {
    if (!seen_right[v]) out.kept.push_back(g.right[v]);
  }
  std::sort(out.kept.begin(), out.kept.end());
  return out;
}

bool is_r_separated(const Dataset& ds, double r, Metric metric) {
  return min_interclass_distance(ds, metric) > 2.0 * r;
}

Model robust_nonpar_train(const Dataset& ds, const ClassifierConfig& config, double r,
                          Metric metric) {
  const PrunedSet pruned = adv_prune(ds, r, metric);
  if (pruned.kept.empty()) throw std::runtime_error("robust_nonpar_train: pruned set is empty");
  return train(config, ds.subset(pruned.kept));
}

double robust_accuracy_upper_bound(const Dataset& ds, double r, Metric metric) {
  if (ds.empty()) throw std::invalid_argument("robust_accuracy_upper_bound: empty dataset");
  return static_cast<double>(adv_prune(ds, r, metric).kept.size()) /
         static_cast<double>(ds.size());
}

}  // namespace astute
