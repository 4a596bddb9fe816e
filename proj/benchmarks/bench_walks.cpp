#include <weylwalk/walks.hpp>

#include <benchmark/benchmark.h>

using namespace weylwalk;

namespace {

void BM_StepSemiIsotropic(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  const auto kernel = SemiIsotropicKernel::isotropic({rank, 2});
  CounterRng rng(7);
  Vertex x = Vertex::base({rank, 2});
  for (auto _ : state) x = step_semi_isotropic(x, kernel, rng);
  benchmark::DoNotOptimize(x);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StepSemiIsotropic)->Arg(1)->Arg(2)->Arg(3);

void BM_GroupWalkStep(benchmark::State& state) {
  const auto config = GroupWalkConfig::neighbour_generators({2, 2});
  auto walker = GroupWalkState::identity({2, 2});
  CounterRng rng(8);
  for (auto _ : state) step_group_walk(walker, config, rng);
  benchmark::DoNotOptimize(walker);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GroupWalkStep);

void BM_ReducedChain(benchmark::State& state) {
  const auto config = ReducedChainConfig::drift_free(2, Rational(1, 2));
  ReducedChainState chain;
  CounterRng rng(9);
  for (auto _ : state) benchmark::DoNotOptimize(step_reduced_chain(chain, config, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ReducedChain);

void BM_ProjectionReturns(benchmark::State& state) {
  const auto fk = factor_kernel(SemiIsotropicKernel::drift_free({2, 2}));
  CounterRng rng(10);
  for (auto _ : state) benchmark::DoNotOptimize(count_projection_returns(fk, 0, 100000, rng));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_ProjectionReturns)->Unit(benchmark::kMillisecond);

}  // namespace
