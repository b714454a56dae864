#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "astute/attacks.hpp"
#include "astute/model.hpp"
#include "astute/scenario.hpp"

namespace astute {

/// Fraction of test points classified correctly. Throws on an empty test set.
double accuracy(const Model& model, const Dataset& test);
double accuracy(const Predictor& predictor, const Dataset& test);

struct EvalReport {
  std::size_t n_test = 0;
  double accuracy = 0.0;
  double astuteness = 0.0;
  double r = 0.0;
  AttackMethod method = AttackMethod::Exact;
  bool approximate = false;  // grid oracle cannot certify
};

EvalReport empirical_astuteness(const Model& model, const Dataset& test,
                                const AttackBudget& budget, const AttackSettings& settings);

// ---------------------------------------------------------------------------
// Convergence sweep

struct SweepConfig {
  ScenarioSpec scenario;  // `n` is ignored; sizes come from `sizes`
  std::vector<std::size_t> sizes{20, 50, 100, 200, 500, 1000, 2000, 3000};
  std::size_t repeats = 5;
  std::size_t test_size = 1000;
  ClassifierConfig classifier;
  bool prune = false;
  double prune_radius = 0.1;
  Metric prune_metric = Metric::Linf;
  AttackBudget budget;  // attack radius r
  AttackSettings attack;
  std::uint64_t seed = 0;
  /// Restrict attacks to the scenario's input space and anchor histogram
  /// roots to it, when the scenario has one.
  bool use_input_space = true;

  void validate() const;
};

struct SweepCell {
  std::size_t n = 0;
  std::size_t repeat = 0;
  double accuracy = 0.0;
  double astuteness = 0.0;
  double kept_fraction = 1.0;  // |S_r| / n, 1 without pruning

  bool operator==(const SweepCell&) const = default;
};

struct SweepRow {
  std::size_t n = 0;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
  double astuteness_mean = 0.0;
  double astuteness_std = 0.0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepCell> cells;  // size-major, then repeat

  bool operator==(const SweepResult&) const = default;
};

/// Train/test draws use dedicated streams per (size, repeat), so cells may run
/// in any order and the result is bitwise reproducible.
SweepResult convergence_sweep(const SweepConfig& config);

/// Header: n,accuracy_mean,accuracy_std,astuteness_mean,astuteness_std
void write_sweep_csv(const SweepResult& result, std::ostream& out);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

// ---------------------------------------------------------------------------
// Monte-Carlo probes of the r-consistency conditions

enum class ProbeOuter {
  Distribution,  // X drawn fresh from the scenario
  Empirical,     // X ranges over every training point (theorem-1 probe only)
};

struct ProbeConfig {
  ClassifierConfig classifier;
  ScenarioSpec scenario;  // `n` is ignored; sizes come from `sizes`
  double a = 0.05;        // ball radius around X
  double b = 0.2;         // "far" threshold
  std::vector<std::size_t> sizes{100, 1000};
  std::size_t sample_draws = 20;         // independent training sets per size
  std::size_t queries_per_sample = 50;   // X draws per training set
  std::size_t boundary_candidates = 64;  // sup approximation
  std::size_t interior_candidates = 16;
  Metric metric = Metric::Linf;  // ball shape and far threshold
  std::optional<Point> anchor;   // fixes X instead of sampling it
  ProbeOuter outer = ProbeOuter::Distribution;
  double prune_radius = 0.1;  // theorem-4 probe
  Metric prune_metric = Metric::Linf;
  double gamma = 0.0;  // robustness gap; reporting only
  std::uint64_t seed = 0;

  void validate() const;
};

struct ProbeRow {
  std::size_t n = 0;
  double estimate = 0.0;
  double std_error = 0.0;
};

struct ProbeResult {
  std::vector<ProbeRow> rows;
};

/// Max over candidate points c in B(center, a) of sum_i w_i(c) [d(x_i, c) > b].
/// Candidates: the center, `boundary` points on the sphere, `interior` points
/// inside. A lower bound on the true supremum.
double far_weight_sup(const Model& model, std::span<const double> center, double a, double b,
                      Metric metric, std::size_t boundary, std::size_t interior,
                      RandomStream& rng);

/// E_{X,S}[sup_{x' in B(X,a)} sum_i w_i(x') [|x_i - x'| > b]] per sample size.
ProbeResult probe_theorem1(const ProbeConfig& config);

/// E_S[(1/m) sum_i sup_{x in B(x_i,a)} sum_j w_j^{S_r}(x) [|x_j - x| > b]]
/// with S_r the adversarially pruned sample.
ProbeResult probe_theorem4(const ProbeConfig& config);

void write_probe_csv(const ProbeResult& result, std::ostream& out);

// ---------------------------------------------------------------------------
// Bayes-optimal vs constant classifier on Example 1

struct BayesGapReport {
  double r = 0.0;
  std::size_t n = 0;
  double bayes_accuracy = 0.0;
  double bayes_astuteness = 0.0;
  double constant_accuracy = 0.0;
  double constant_astuteness = 0.0;
  double constant_robustness = 0.0;  // fraction of points where +1 is robust
};

/// Robustness of a 1-D rule: constant on [x - r, x + r] ∩ domain, scanned at
/// resolution r / steps.
bool robust_1d(const Predictor& predictor, double x, double r, const Box& domain,
               std::size_t steps = 1000);

BayesGapReport bayes_gap_demo(double r, std::size_t n, std::uint64_t seed);

}  // namespace astute
