#include "astute/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "astute/lp.hpp"

namespace astute {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double linf(std::span<const double> a, std::span<const double> b) {
  return detail::distance_unchecked(Metric::Linf, a.data(), b.data(), a.size());
}

// Moves `from` toward `toward` by at most `step` in every coordinate.
Point nudge(const Point& from, const Point& toward, double step) {
  double span = 0.0;
  for (std::size_t j = 0; j < from.dim(); ++j) span = std::max(span, std::abs(toward[j] - from[j]));
  if (span == 0.0) return from;
  const double lambda = std::min(1.0, step / span);
  Point w = from;
  for (std::size_t j = 0; j < w.dim(); ++j) w[j] += lambda * (toward[j] - from[j]);
  return w;
}

void check_query(std::size_t model_dim, std::span<const double> x, const AttackBudget& budget) {
  if (x.size() != model_dim) throw std::invalid_argument("attack: target dimension mismatch");
  budget.validate();
  if (budget.domain && budget.domain->dim() != model_dim) {
    throw std::invalid_argument("attack: domain dimension mismatch");
  }
}

// A box-shaped adversarial region. Witnesses are pulled from the nearest
// point of the closed box toward `inside` so they land strictly within the
// half-open region.
struct Region {
  Box box;
  Point inside;
  double distance;
};

}  // namespace

std::string_view to_string(AttackOutcome outcome) noexcept {
  switch (outcome) {
    case AttackOutcome::Found:
      return "found";
    case AttackOutcome::CertifiedAstute:
      return "certified_astute";
    case AttackOutcome::Unknown:
      return "unknown";
  }
  return "unknown";
}

AttackResult AttackResult::found(Point witness, double radius) {
  return {AttackOutcome::Found, std::move(witness), radius};
}

void AttackBudget::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("r: must be > 0");
  if (!(tolerance > 0.0) || !(tolerance < r)) {
    throw std::invalid_argument("tolerance: must be in (0, r)");
  }
}

double linf_distance_to_cell(std::span<const double> x, const Cell& cell) {
  return linf_distance_to_box(x, cell.closure());
}

bool cell_reachable_interval_form(std::span<const double> x, const Cell& cell, double r) {
  return linf_distance_to_cell(x, cell) <= r;
}

bool cell_reachable_center_form(std::span<const double> x, const Cell& cell, double r) {
  return linf(x, cell.center()) <= 0.5 * cell.side + r;
}

AttackResult histogram_attack(const HistogramModel& model, std::span<const double> x, Label y,
                              const AttackBudget& budget) {
  check_query(model.training().dim(), x, budget);
  if (model.predict(x) != y) return AttackResult::found(Point(x), 0.0);
  const std::size_t d = x.size();

  std::vector<Region> regions;
  // `axis` < d marks an exterior slab, open toward the root along that axis.
  auto consider = [&](Box box, std::size_t axis, double outward) {
    if (budget.domain) {
      box = intersect(box, *budget.domain);
      if (is_empty(box)) return;
    }
    const double dist = linf_distance_to_box(x, box);
    if (dist > budget.r) return;
    Point inside = clamp(x, box);
    if (axis < d) {
      const double lo = box.lo[axis];
      const double hi = box.hi[axis];
      inside[axis] = std::isfinite(lo) && std::isfinite(hi) ? 0.5 * (lo + hi)
                                                            : inside[axis] + outward;
    } else {
      for (std::size_t j = 0; j < d; ++j) inside[j] = 0.5 * (box.lo[j] + box.hi[j]);
    }
    regions.push_back({std::move(box), std::move(inside), dist});
  };

  for (const LabeledCell& lc : model.leaf_cells()) {
    if (lc.label == y) continue;
    consider(lc.cell.closure(), d, 0.0);
  }

  // Outside the root the classifier answers -1; cover it by 2d half-spaces.
  if (y == Label::Positive) {
    const Cell& root = model.root();
    for (std::size_t j = 0; j < d; ++j) {
      Box below{Point(d, -kInf), Point(d, kInf)};
      below.hi[j] = root.lo[j];
      consider(std::move(below), j, -1.0);
      Box above{Point(d, -kInf), Point(d, kInf)};
      above.lo[j] = root.hi(j);
      consider(std::move(above), j, 1.0);
    }
  }

  std::stable_sort(regions.begin(), regions.end(),
                   [](const Region& a, const Region& b) { return a.distance < b.distance; });
  for (const Region& region : regions) {
    const Point nearest = clamp(x, region.box);
    const Point witness = nudge(nearest, region.inside, 0.5 * budget.tolerance);
    if (budget.domain && !budget.domain->contains(witness)) continue;
    if (model.predict(witness) == y) continue;
    return AttackResult::found(witness, linf(x, witness));
  }
  return AttackResult::certified();
}

AttackResult nn1_attack_exact(const KnnModel& model, std::span<const double> x, Label y,
                              const AttackBudget& budget) {
  const Dataset& train = model.training();
  if (model.k() != 1 || model.metric() != Metric::L2) {
    throw std::invalid_argument(
        "nn1_attack_exact: requires k = 1 with L2 neighbours; use grid_attack instead");
  }
  if (train.dim() != 2) {
    throw std::invalid_argument("nn1_attack_exact: exact mode is 2-D only; use grid_attack");
  }
  check_query(2, x, budget);
  if (model.predict(x) != y) return AttackResult::found(Point(x), 0.0);

  Box box = linf_ball(x, budget.r);
  if (budget.domain) {
    box = intersect(box, *budget.domain);
    if (is_empty(box)) return AttackResult::certified();
  }

  // Every point of the box has a training point within `reach`, so only
  // training points within `reach` of the box can own any part of it, and
  // only their bisectors can bound those parts.
  double reach = kInf;
  for (std::size_t i = 0; i < train.size(); ++i) {
    reach = std::min(reach, l2_max_distance_to_box(train.point(i), box));
  }
  std::vector<std::size_t> local;
  std::vector<double> near;  // l2_min_distance_to_box per local point
  for (std::size_t i = 0; i < train.size(); ++i) {
    const double d = l2_min_distance_to_box(train.point(i), box);
    if (d <= reach) {
      local.push_back(i);
      near.push_back(d);
    }
  }

  struct Candidate {
    double t;
    std::size_t z;
    Point at;
  };
  std::vector<Candidate> found;

  // Variables (v1, v2, t) with x' = x + v; minimise t.
  const double objective[3] = {0.0, 0.0, 1.0};
  static constexpr double kLinfRows[4][3] = {
      {1.0, 0.0, -1.0}, {-1.0, 0.0, -1.0}, {0.0, 1.0, -1.0}, {0.0, -1.0, -1.0}};
  const double lo[3] = {box.lo[0] - x[0], box.lo[1] - x[1], 0.0};
  const double hi[3] = {box.hi[0] - x[0], box.hi[1] - x[1], budget.r};
  for (std::size_t zi = 0; zi < local.size(); ++zi) {
    const std::size_t z = local[zi];
    if (train.label(z) == y) continue;
    const auto pz = train.point(z);
    const double z0 = pz[0] - x[0];
    const double z1 = pz[1] - x[1];
    // p cannot beat z anywhere in the box when it is farther from every box
    // point than z is from the farthest one.
    const double z_far = l2_max_distance_to_box(pz, box);
    lp::Constraints cons(3);
    // |v_j| <= t
    for (const auto& row : kLinfRows) cons.add(row, 0.0);
    for (std::size_t pi = 0; pi < local.size(); ++pi) {
      const std::size_t p = local[pi];
      if (p == z || near[pi] > z_far) continue;
      const auto pp = train.point(p);
      const double p0 = pp[0] - x[0];
      const double p1 = pp[1] - x[1];
      // |x' - z|^2 <= |x' - p|^2 is linear in x'.
      const double row[3] = {2.0 * (p0 - z0), 2.0 * (p1 - z1), 0.0};
      cons.add(row, (p0 * p0 + p1 * p1) - (z0 * z0 + z1 * z1));
    }
    const lp::Solution sol = lp::minimize_in_box(objective, cons, lo, hi);
    if (sol.status != lp::Status::Optimal) continue;
    found.push_back({sol.objective, z, Point{x[0] + sol.x[0], x[1] + sol.x[1]}});
  }

  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    return a.t < b.t || (a.t == b.t && a.z < b.z);
  });
  for (const Candidate& c : found) {
    // The LP optimum sits on a bisector; step toward z so the witness is
    // strictly inside z's cell and tie-breaking cannot flip it back.
    const Point witness = nudge(c.at, Point(train.point(c.z)), 0.5 * budget.tolerance);
    if (budget.domain && !budget.domain->contains(witness)) continue;
    if (model.predict(witness) == y) continue;
    return AttackResult::found(witness, linf(x, witness));
  }
  return AttackResult::certified();
}

AttackResult grid_attack(const Predictor& predictor, std::span<const double> x, Label y,
                         const AttackBudget& budget, double resolution, std::size_t max_points) {
  budget.validate();
  if (!(resolution > 0.0) || resolution > budget.r) {
    throw std::invalid_argument("grid_resolution: must be in (0, r]");
  }
  const std::size_t d = x.size();
  if (budget.domain && budget.domain->dim() != d) {
    throw std::invalid_argument("attack: domain dimension mismatch");
  }
  const long steps = static_cast<long>(std::floor(budget.r / resolution + 1e-9));
  const double total = std::pow(2.0 * static_cast<double>(steps) + 1.0, static_cast<double>(d));
  if (total > static_cast<double>(max_points)) {
    throw std::invalid_argument("grid_attack: " + std::to_string(static_cast<long double>(total)) +
                                " grid points exceed the cap of " + std::to_string(max_points));
  }

  std::vector<long> k(d, 0);
  Point probe(x);
  std::optional<AttackResult> hit;
  auto evaluate = [&]() {
    for (std::size_t j = 0; j < d; ++j) probe[j] = x[j] + resolution * static_cast<double>(k[j]);
    if (budget.domain && !budget.domain->contains(probe)) return false;
    if (predictor(probe) == y) return false;
    hit = AttackResult::found(probe, linf(x, probe));
    return true;
  };
  // Lexicographic walk over the shell max|k_j| == s.
  auto walk = [&](auto& self, std::size_t j, long s, bool on_shell) -> bool {
    if (j == d) return evaluate();
    if (j + 1 == d && !on_shell) {
      for (long v : {-s, s}) {
        k[j] = v;
        if (self(self, j + 1, s, true)) return true;
      }
      return false;
    }
    for (long v = -s; v <= s; ++v) {
      k[j] = v;
      if (self(self, j + 1, s, on_shell || v == -s || v == s)) return true;
    }
    return false;
  };

  if (evaluate()) return *hit;
  for (long s = 1; s <= steps; ++s) {
    if (walk(walk, 0, s, false)) return *hit;
  }
  return AttackResult::unknown();
}

std::string_view to_string(AttackMethod method) noexcept {
  return method == AttackMethod::Exact ? "exact" : "grid";
}

std::optional<AttackMethod> parse_attack_method(std::string_view name) noexcept {
  if (name == "exact") return AttackMethod::Exact;
  if (name == "grid") return AttackMethod::Grid;
  return std::nullopt;
}

bool supports_exact_attack(const Model& model) noexcept {
  if (std::holds_alternative<HistogramModel>(model)) return true;
  if (const auto* knn = std::get_if<KnnModel>(&model)) {
    return knn->k() == 1 && knn->metric() == Metric::L2 && knn->training().dim() == 2;
  }
  return false;
}

AttackResult attack(const Model& model, std::span<const double> x, Label y,
                    const AttackBudget& budget, const AttackSettings& settings) {
  if (settings.method == AttackMethod::Grid) {
    return grid_attack(as_predictor(model), x, y, budget, settings.grid_resolution,
                       settings.grid_max_points);
  }
  if (const auto* hist = std::get_if<HistogramModel>(&model)) {
    return histogram_attack(*hist, x, y, budget);
  }
  if (const auto* knn = std::get_if<KnnModel>(&model)) {
    return nn1_attack_exact(*knn, x, y, budget);
  }
  throw std::invalid_argument("attack: no exact attack for kernel classifiers; use grid");
}

bool is_astute(const Model& model, const AttackSettings& settings, std::span<const double> x,
               Label y, const AttackBudget& budget) {
  if (predict(model, x) != y) return false;
  return attack(model, x, y, budget, settings).outcome != AttackOutcome::Found;
}

}  // namespace astute
