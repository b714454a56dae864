#include <gtest/gtest.h>

#include <sstream>

#include "astute/csv.hpp"
#include "astute/evaluation.hpp"
#include "astute/pruning.hpp"

using namespace astute;

namespace {

Dataset two_clusters() {
  Dataset ds(2);
  RandomStream rng(1, 1);
  for (int i = 0; i < 40; ++i) {
    ds.add(Point{rng.uniform(0, 0.1), rng.uniform(0, 0.1)}, Label::Positive);
    ds.add(Point{rng.uniform(2, 2.1), rng.uniform(2, 2.1)}, Label::Negative);
  }
  return ds;
}

SweepConfig small_sweep() {
  SweepConfig c;
  c.scenario.kind = ScenarioKind::HalfMoons;
  c.scenario.sigma = 0.08;
  c.sizes = {20, 60, 150};
  c.repeats = 3;
  c.test_size = 100;
  c.prune = true;
  c.budget.r = 0.09;
  c.seed = 17;
  return c;
}

}  // namespace

TEST(Accuracy, MemorizedTestSetIsPerfect) {
  const Dataset ds = two_clusters();
  EXPECT_EQ(accuracy(train(ClassifierConfig::knn(), ds), ds), 1.0);
}

TEST(Accuracy, ConstantPositiveOnExample3) {
  RandomStream rng(2, 2);
  const Dataset test = generate({ScenarioKind::Example3, 20000}, rng);
  const Predictor plus = [](std::span<const double>) { return Label::Positive; };
  EXPECT_NEAR(accuracy(plus, test), 0.9, 0.01);
}

TEST(Accuracy, NoiselessMoonsOneNn) {
  RandomStream tr(3, 1), te(3, 2);
  const Model m = train(ClassifierConfig::knn(), generate({ScenarioKind::HalfMoons, 3000}, tr));
  EXPECT_GE(accuracy(m, generate({ScenarioKind::HalfMoons, 1000}, te)), 0.99);
}

TEST(Accuracy, EmptyTestSetThrows) {
  EXPECT_THROW(accuracy(train(ClassifierConfig::knn(), two_clusters()), Dataset(2)),
               std::invalid_argument);
}

TEST(Astuteness, FarClustersAreFullyAstute) {
  const Dataset ds = two_clusters();
  AttackBudget b;
  b.r = 0.2;
  const EvalReport rep = empirical_astuteness(train(ClassifierConfig::knn(), ds), ds, b, {});
  EXPECT_EQ(rep.astuteness, 1.0);
  EXPECT_FALSE(rep.approximate);
  AttackSettings grid;
  grid.method = AttackMethod::Grid;
  grid.grid_resolution = 0.05;
  EXPECT_TRUE(empirical_astuteness(train(ClassifierConfig::knn(), ds), ds, b, grid).approximate);
}

TEST(Astuteness, Example2HistogramIsAboutPointEight) {
  RandomStream tr(4, 1), te(4, 2);
  const Model m = train(ClassifierConfig::histogram(SizeRule::ceil_sqrt(), input_space(ScenarioKind::Example2)),
                        generate({ScenarioKind::Example2, 5000}, tr));
  AttackBudget b;
  b.r = 0.1;
  b.domain = input_space(ScenarioKind::Example2);
  const EvalReport rep = empirical_astuteness(m, generate({ScenarioKind::Example2, 4000}, te), b, {});
  EXPECT_NEAR(rep.astuteness, 0.8, 0.03);
}

TEST(Astuteness, BoundedByAccuracyAndMonotoneInRadius) {
  RandomStream tr(5, 1), te(5, 2);
  const Dataset train_ds = generate({ScenarioKind::HalfMoons, 400, 0.15}, tr);
  const Dataset test = generate({ScenarioKind::HalfMoons, 200, 0.15}, te);
  for (const ClassifierConfig& cfg : {ClassifierConfig::knn(), ClassifierConfig::histogram()}) {
    const Model m = train(cfg, train_ds);
    double prev = 1.0;
    for (double r : {0.02, 0.05, 0.1, 0.2}) {
      AttackBudget b;
      b.r = r;
      const EvalReport rep = empirical_astuteness(m, test, b, {});
      EXPECT_LE(rep.astuteness, rep.accuracy);
      EXPECT_LE(rep.astuteness, prev);
      prev = rep.astuteness;
    }
  }
}

TEST(Sweep, ShapeAndDeterminism) {
  const SweepConfig c = small_sweep();
  const SweepResult a = convergence_sweep(c);
  const SweepResult b = convergence_sweep(c);
  ASSERT_EQ(a.rows.size(), c.sizes.size());
  EXPECT_EQ(a, b);
  for (const SweepRow& row : a.rows) {
    EXPECT_LE(row.astuteness_mean, row.accuracy_mean);
    EXPECT_GE(row.accuracy_std, 0.0);
  }
  SweepConfig other = c;
  other.seed = 18;
  EXPECT_NE(convergence_sweep(other), a);
}

TEST(Sweep, ScheduleInvariant) {
  const SweepConfig c = small_sweep();
  setenv("ASTUTE_NP_THREADS", "1", 1);
  const SweepResult serial = convergence_sweep(c);
  setenv("ASTUTE_NP_THREADS", "4", 1);
  const SweepResult parallel = convergence_sweep(c);
  unsetenv("ASTUTE_NP_THREADS");
  EXPECT_EQ(serial, parallel);
}

TEST(Sweep, ValidationNamesField) {
  SweepConfig c = small_sweep();
  c.sizes = {50, 20};
  EXPECT_THROW(convergence_sweep(c), std::invalid_argument);
  c = small_sweep();
  c.repeats = 0;
  EXPECT_THROW(convergence_sweep(c), std::invalid_argument);
}

TEST(Sweep, CsvRoundTrip) {
  const SweepResult r = convergence_sweep(small_sweep());
  std::stringstream buf;
  write_sweep_csv(r, buf);
  EXPECT_EQ(buf.str().substr(0, buf.str().find('\n')),
            "n,accuracy_mean,accuracy_std,astuteness_mean,astuteness_std");
  EXPECT_EQ(read_sweep_csv(buf), r.rows);
  std::istringstream bad("n,accuracy\n");
  EXPECT_THROW(read_sweep_csv(bad), ParseError);
}

TEST(Probe, DegenerateCaseIsZero) {
  ProbeConfig p;
  p.classifier = ClassifierConfig::knn();
  p.scenario.kind = ScenarioKind::Example3;
  p.a = 0.1;
  p.b = 5.0;
  p.sizes = {10, 50};
  p.sample_draws = 3;
  p.queries_per_sample = 5;
  for (const ProbeRow& row : probe_theorem1(p).rows) {
    EXPECT_EQ(row.estimate, 0.0);
    EXPECT_EQ(row.std_error, 0.0);
  }
}

TEST(Probe, EstimatesAreWeightMasses) {
  ProbeConfig p;
  p.classifier = ClassifierConfig::knn(3);
  p.scenario.kind = ScenarioKind::HalfMoons;
  p.scenario.sigma = 0.08;
  p.sizes = {30, 100};
  p.sample_draws = 4;
  p.queries_per_sample = 10;
  for (const auto& result : {probe_theorem1(p), probe_theorem4(p)}) {
    for (const ProbeRow& row : result.rows) {
      EXPECT_GE(row.estimate, 0.0);
      EXPECT_LE(row.estimate, 1.0);
      EXPECT_GE(row.std_error, 0.0);
    }
  }
}

TEST(Probe, Theorem4OnSeparatedDataEqualsEmpiricalTheorem1) {
  ProbeConfig p;
  p.classifier = ClassifierConfig::knn();
  p.scenario.kind = ScenarioKind::HalfMoons;
  p.sizes = {40, 120};
  p.sample_draws = 3;
  p.outer = ProbeOuter::Empirical;
  const ProbeResult t1 = probe_theorem1(p);
  const ProbeResult t4 = probe_theorem4(p);
  ASSERT_EQ(t1.rows.size(), t4.rows.size());
  for (std::size_t i = 0; i < t1.rows.size(); ++i) {
    EXPECT_EQ(t1.rows[i].estimate, t4.rows[i].estimate);
    EXPECT_EQ(t1.rows[i].std_error, t4.rows[i].std_error);
  }
}

TEST(Probe, NoisyPrunedOneNnDecreases) {
  ProbeConfig p;
  p.classifier = ClassifierConfig::knn();
  p.scenario.kind = ScenarioKind::HalfMoons;
  p.scenario.sigma = 0.08;
  // With sqrt(2) a <= b every ball centred on a kept point has its nearest
  // neighbour within b, and the probe is identically 0.
  p.a = 0.15;
  p.b = 0.18;
  p.sizes = {50, 200, 800};
  p.sample_draws = 8;
  p.boundary_candidates = 16;
  p.interior_candidates = 4;
  const ProbeResult r = probe_theorem4(p);
  EXPECT_LT(r.rows[1].estimate, r.rows[0].estimate);
  EXPECT_LT(r.rows[2].estimate, r.rows[1].estimate);
}

TEST(Probe, ValidationRejectsBadRadii) {
  ProbeConfig p;
  p.a = 0.3;
  p.b = 0.2;
  EXPECT_THROW(probe_theorem1(p), std::invalid_argument);
  p.a = 0.1;
  p.sample_draws = 0;
  EXPECT_THROW(probe_theorem1(p), std::invalid_argument);
}

TEST(BayesGap, Example1Values) {
  const BayesGapReport r = bayes_gap_demo(0.1, 4000, 1);
  EXPECT_LE(r.bayes_astuteness, 0.02);
  EXPECT_NEAR(r.constant_astuteness, 0.5, 0.03);
  EXPECT_EQ(r.constant_robustness, 1.0);
  EXPECT_GT(r.bayes_accuracy, r.constant_accuracy);
}

TEST(BayesGap, RobustScanRespectsDomain) {
  const Predictor step = [](std::span<const double> x) {
    return x[0] < 0.0 ? Label::Negative : Label::Positive;
  };
  const Box unit{Point{0.0}, Point{1.0}};
  EXPECT_TRUE(robust_1d(step, 0.05, 0.1, unit));
  EXPECT_FALSE(robust_1d(step, 0.05, 0.1, Box{Point{-1.0}, Point{1.0}}));
}
