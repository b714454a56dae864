#include <benchmark/benchmark.h>

#include "astute/attacks.hpp"
#include "astute/pruning.hpp"
#include "astute/scenario.hpp"

using namespace astute;

namespace {

Dataset moons(std::size_t n, double sigma) {
  RandomStream rng(11, 1);
  return generate({ScenarioKind::HalfMoons, n, sigma}, rng);
}

void BM_KnnPredict(benchmark::State& state) {
  const KnnModel m = knn_train(moons(static_cast<std::size_t>(state.range(0)), 0.0));
  RandomStream rng(12, 2);
  for (auto _ : state) {
    const Point x{rng.uniform(-1, 2), rng.uniform(-1, 1.5)};
    benchmark::DoNotOptimize(m.predict(x));
  }
}
BENCHMARK(BM_KnnPredict)->Arg(1000)->Arg(3000);

void BM_HistogramTrain(benchmark::State& state) {
  const Dataset ds = moons(static_cast<std::size_t>(state.range(0)), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(histogram_train(ds).leaf_count());
}
BENCHMARK(BM_HistogramTrain)->Arg(1000)->Arg(3000);

void BM_AdvPrune(benchmark::State& state) {
  const Dataset ds = moons(static_cast<std::size_t>(state.range(0)), 0.15);
  for (auto _ : state) benchmark::DoNotOptimize(adv_prune(ds, 0.1, Metric::Linf).kept.size());
}
BENCHMARK(BM_AdvPrune)->Arg(1000)->Arg(3000);

void BM_Nn1ExactAttack(benchmark::State& state) {
  const Model m = knn_train(moons(static_cast<std::size_t>(state.range(0)), 0.0));
  RandomStream rng(13, 3);
  const Dataset queries = generate({ScenarioKind::HalfMoons, 1024, 0.0}, rng);
  AttackBudget b;
  std::size_t i = 0;
  for (auto _ : state) {
    const auto x = queries.point(i++ % queries.size());
    benchmark::DoNotOptimize(attack(m, x, predict(m, x), b, {}).outcome);
  }
}
BENCHMARK(BM_Nn1ExactAttack)->Arg(1000)->Arg(3000);

// Queries far from the data keep most training points local.
void BM_Nn1ExactAttackFar(benchmark::State& state) {
  const Model m = knn_train(moons(static_cast<std::size_t>(state.range(0)), 0.0));
  AttackBudget b;
  const Point x{-1.0, -1.0};
  for (auto _ : state) benchmark::DoNotOptimize(attack(m, x, predict(m, x), b, {}).outcome);
}
BENCHMARK(BM_Nn1ExactAttackFar)->Arg(300)->Arg(1000);

void BM_HistogramAttack(benchmark::State& state) {
  const HistogramModel h = histogram_train(moons(static_cast<std::size_t>(state.range(0)), 0.0));
  RandomStream rng(14, 4);
  AttackBudget b;
  for (auto _ : state) {
    const Point x{rng.uniform(-1, 2), rng.uniform(-1, 1.5)};
    benchmark::DoNotOptimize(histogram_attack(h, x, h.predict(x), b).outcome);
  }
}
BENCHMARK(BM_HistogramAttack)->Arg(1000)->Arg(3000);

void BM_GridAttack(benchmark::State& state) {
  const Model m = knn_train(moons(200, 0.0));
  const Predictor p = as_predictor(m);
  AttackBudget b;
  b.r = 0.05;
  const Point x{0.0, 0.0};
  const double res = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_attack(p, x, predict(m, x), b, res).outcome);
}
BENCHMARK(BM_GridAttack)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
