#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "astute/geometry.hpp"
#include "astute/histogram.hpp"
#include "astute/knn.hpp"
#include "astute/model.hpp"

namespace astute {

enum class AttackOutcome { Found, CertifiedAstute, Unknown };

std::string_view to_string(AttackOutcome outcome) noexcept;

/// Outcome of a minimal-perturbation search. `radius` is the LINF distance
/// from the target to `witness`; both are set iff the outcome is Found.
struct AttackResult {
  AttackOutcome outcome = AttackOutcome::Unknown;
  std::optional<Point> witness;
  std::optional<double> radius;

  static AttackResult found(Point witness, double radius);
  static AttackResult certified() { return {AttackOutcome::CertifiedAstute, {}, {}}; }
  static AttackResult unknown() { return {AttackOutcome::Unknown, {}, {}}; }
};

/// Closed LINF ball of radius r, optionally restricted to the input space.
/// Witnesses may sit up to `tolerance` beyond r so they land strictly inside
/// a half-open region rather than on its face.
struct AttackBudget {
  double r = 0.1;
  double tolerance = 1e-9;
  std::optional<Box> domain;

  void validate() const;
};

/// LINF distance from x to the closure of the cell, by per-axis intervals.
double linf_distance_to_cell(std::span<const double> x, const Cell& cell);
/// Cell within reach, interval form: LINF(x, cell) <= r.
bool cell_reachable_interval_form(std::span<const double> x, const Cell& cell, double r);
/// Cell within reach, center form: LINF(x, center) <= side / 2 + r.
bool cell_reachable_center_form(std::span<const double> x, const Cell& cell, double r);

/// Exact LINF attack on a histogram: nearest leaf with a label other than y,
/// plus the region outside the root (which predicts -1).
AttackResult histogram_attack(const HistogramModel& model, std::span<const double> x, Label y,
                              const AttackBudget& budget);

/// Exact LINF attack on 2-D 1-NN with L2 neighbour distances. For each
/// training point z of the other label, a 3-variable LP finds the point of
/// z's Voronoi cell closest to x in LINF; the minimum over z is the answer.
/// Throws std::invalid_argument for any other configuration.
AttackResult nn1_attack_exact(const KnnModel& model, std::span<const double> x, Label y,
                              const AttackBudget& budget);

inline constexpr std::size_t kDefaultGridCap = 20'000'000;

/// Scans the grid x + resolution * k, |k|_inf <= r / resolution, shell by
/// shell outward and lexicographically within a shell. Returns Found on the
/// first label mismatch, Unknown otherwise (a grid cannot certify).
/// Throws std::invalid_argument if the grid exceeds `max_points`.
AttackResult grid_attack(const Predictor& predictor, std::span<const double> x, Label y,
                         const AttackBudget& budget, double resolution,
                         std::size_t max_points = kDefaultGridCap);

enum class AttackMethod { Exact, Grid };

std::string_view to_string(AttackMethod method) noexcept;
std::optional<AttackMethod> parse_attack_method(std::string_view name) noexcept;

struct AttackSettings {
  AttackMethod method = AttackMethod::Exact;
  double grid_resolution = 1e-3;
  std::size_t grid_max_points = kDefaultGridCap;
};

/// True when an exact attack exists for this model (histograms; 2-D 1-NN
/// with L2 neighbours).
bool supports_exact_attack(const Model& model) noexcept;

AttackResult attack(const Model& model, std::span<const double> x, Label y,
                    const AttackBudget& budget, const AttackSettings& settings);

/// Astute at (x, y): predict(x) == y and the attack finds no adversarial
/// example. With the grid method this is an approximation.
bool is_astute(const Model& model, const AttackSettings& settings, std::span<const double> x,
               Label y, const AttackBudget& budget);

}  // namespace astute
