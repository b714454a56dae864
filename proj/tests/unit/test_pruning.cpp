#include <gtest/gtest.h>

#include <cmath>

#include "astute/evaluation.hpp"
#include "astute/pruning.hpp"
#include "astute/scenario.hpp"
#include "oracles.hpp"

using namespace astute;

namespace {

Dataset random_instance(std::uint64_t seed, std::size_t n) {
  RandomStream rng(seed, 21);
  Dataset ds(2);
  for (std::size_t i = 0; i < n; ++i) {
    ds.add(Point{rng.uniform(), rng.uniform()}, rng.bernoulli(0.5) ? Label::Positive : Label::Negative);
  }
  return ds;
}

Dataset chain() {
  Dataset ds(1);
  ds.add(Point{0.0}, Label::Positive);
  ds.add(Point{0.1}, Label::Negative);
  ds.add(Point{0.2}, Label::Positive);
  return ds;
}

}  // namespace

TEST(ConflictGraph, SameLabelHasNoEdges) {
  Dataset ds(1);
  for (int i = 0; i < 5; ++i) ds.add(Point{0.01 * i}, Label::Positive);
  EXPECT_EQ(build_conflict_graph(ds, 0.1, Metric::Linf).edge_count(), 0u);
}

TEST(ConflictGraph, ClosedThreshold) {
  Dataset ds(1);
  ds.add(Point{0.0}, Label::Positive);
  ds.add(Point{0.15}, Label::Negative);
  EXPECT_EQ(build_conflict_graph(ds, 0.1, Metric::Linf).edge_count(), 1u);
  Dataset exact(1);
  exact.add(Point{0.0}, Label::Positive);
  exact.add(Point{0.5}, Label::Negative);
  EXPECT_EQ(build_conflict_graph(exact, 0.25, Metric::Linf).edge_count(), 1u);
}

TEST(ConflictGraph, MatchesPairwiseScan) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset ds = random_instance(seed, 30);
    for (Metric m : {Metric::L2, Metric::Linf}) {
      EXPECT_EQ(build_conflict_graph(ds, 0.1, m).edges(), oracle::conflict_pairs(ds, 0.1, m));
    }
  }
}

TEST(ConflictGraph, RejectsNonPositiveRadius) {
  EXPECT_THROW(build_conflict_graph(chain(), 0.0, Metric::Linf), std::invalid_argument);
}

TEST(Matching, EmptyAndCompleteBipartite) {
  ConflictGraph empty;
  empty.left = {0};
  empty.right = {1};
  empty.adjacency = {{}};
  EXPECT_EQ(max_matching(empty).size, 0u);
  ConflictGraph k23;
  k23.left = {0, 1};
  k23.right = {2, 3, 4};
  k23.adjacency = {{0, 1, 2}, {0, 1, 2}};
  EXPECT_EQ(max_matching(k23).size, 2u);
}

TEST(Matching, MatchesExhaustiveSearch) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Dataset ds = random_instance(seed, 6 + seed % 13);
    const ConflictGraph g = build_conflict_graph(ds, 0.15, Metric::Linf);
    const Matching mt = max_matching(g);
    EXPECT_EQ(mt.size, oracle::max_matching_size(g.adjacency));
    std::size_t pairs = 0;
    for (std::size_t l = 0; l < mt.mate_left.size(); ++l) {
      if (mt.mate_left[l] == Matching::kFree) continue;
      ++pairs;
      EXPECT_EQ(mt.mate_right[mt.mate_left[l]], l);
    }
    EXPECT_EQ(pairs, mt.size);
  }
}

TEST(AdvPrune, SeparatedInputIsIdentity) {
  RandomStream rng(1, 1);
  const Dataset ds = generate({ScenarioKind::HalfMoons, 500}, rng);
  const PrunedSet p = adv_prune(ds, 0.1, Metric::Linf);
  EXPECT_EQ(p.kept.size(), ds.size());
  EXPECT_EQ(p.matching_size, 0u);
  EXPECT_EQ(robust_accuracy_upper_bound(ds, 0.1, Metric::Linf), 1.0);
}

TEST(AdvPrune, ChainDropsMiddle) {
  const PrunedSet p = adv_prune(chain(), 0.1, Metric::Linf);
  EXPECT_EQ(p.kept, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(oracle::max_separated_subset(chain(), 0.1, Metric::Linf), 2u);
  EXPECT_DOUBLE_EQ(robust_accuracy_upper_bound(chain(), 0.1, Metric::Linf), 2.0 / 3.0);
}

TEST(AdvPrune, MatchesSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 4 + seed % 15;
    const Dataset ds = random_instance(seed + 1000, n);
    const double r = 0.05 + 0.01 * static_cast<double>(seed % 10);
    const PrunedSet p = adv_prune(ds, r, Metric::Linf);
    EXPECT_EQ(p.kept.size(), oracle::max_separated_subset(ds, r, Metric::Linf)) << "seed " << seed;
  }
}

TEST(AdvPrune, CertificateAndInvariants) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Dataset ds = random_instance(seed + 2000, 80);
    for (Metric m : {Metric::L2, Metric::Linf}) {
      const PrunedSet p = adv_prune(ds, 0.08, m);
      EXPECT_EQ(p.kept.size() + p.matching_size, ds.size());
      EXPECT_GE(2 * p.kept.size(), ds.size());
      EXPECT_TRUE(std::is_sorted(p.kept.begin(), p.kept.end()));
      EXPECT_TRUE(is_r_separated(ds.subset(p.kept), 0.08, m));
      EXPECT_GE(adv_prune(ds, 0.04, m).kept.size(), p.kept.size());
    }
  }
}

TEST(AdvPrune, Deterministic) {
  const Dataset ds = random_instance(77, 200);
  EXPECT_EQ(adv_prune(ds, 0.05, Metric::Linf).kept, adv_prune(ds, 0.05, Metric::Linf).kept);
}

TEST(RobustNonPar, SeparatedInputTrainsSameModel) {
  RandomStream rng(3, 1);
  const Dataset ds = generate({ScenarioKind::Example3, 300}, rng);
  const Model pruned = robust_nonpar_train(ds, ClassifierConfig::knn(), 0.3, Metric::Linf);
  EXPECT_EQ(training_set(pruned), ds);
  EXPECT_EQ(training_set(pruned).count(Label::Negative), ds.count(Label::Negative));
}

TEST(RobustNonPar, NoisyMoonKeptFractionIsReproducible) {
  RandomStream a(5, 1), b(5, 1);
  const Dataset da = generate({ScenarioKind::HalfMoons, 1000, 0.08}, a);
  const Dataset db = generate({ScenarioKind::HalfMoons, 1000, 0.08}, b);
  const double fa = robust_accuracy_upper_bound(da, 0.1, Metric::Linf);
  EXPECT_EQ(fa, robust_accuracy_upper_bound(db, 0.1, Metric::Linf));
  EXPECT_GT(fa, 0.5);
  EXPECT_LE(fa, 1.0);
  std::vector<std::size_t> first16(16);
  for (std::size_t i = 0; i < 16; ++i) first16[i] = i;
  const Dataset small = da.subset(first16);
  EXPECT_EQ(adv_prune(small, 0.1, Metric::Linf).kept.size(),
            oracle::max_separated_subset(small, 0.1, Metric::Linf));
}

TEST(RobustNonPar, AstutenessOnTrainingBoundedByKeptFraction) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    RandomStream rng(seed, 44);
    const Dataset ds = generate({ScenarioKind::HalfMoons, 150, 0.25}, rng);
    const double bound = robust_accuracy_upper_bound(ds, 0.1, Metric::Linf);
    KernelSpec gaussian;
    for (const ClassifierConfig& cfg :
         {ClassifierConfig::knn(), ClassifierConfig::histogram(), ClassifierConfig::kernel_classifier(gaussian)}) {
      const Model m = robust_nonpar_train(ds, cfg, 0.1, Metric::Linf);
      AttackBudget budget;
      budget.r = 0.1;
      AttackSettings settings;
      if (cfg.family == ClassifierFamily::Kernel) {
        settings.method = AttackMethod::Grid;
        settings.grid_resolution = 0.01;
      }
      const EvalReport rep = empirical_astuteness(m, ds, budget, settings);
      EXPECT_LE(rep.astuteness, bound + 1e-12) << to_string(cfg.family);
    }
  }
}
