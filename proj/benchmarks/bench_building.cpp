#include <weylwalk/building.hpp>
#include <weylwalk/padic.hpp>
#include <weylwalk/rng.hpp>

#include <benchmark/benchmark.h>

#include <vector>

using namespace weylwalk;

namespace {

Vertex walk_out(const BuildingParams& p, int steps, std::uint64_t seed) {
  CounterRng rng(seed);
  Vertex x = Vertex::base(p);
  for (int s = 0; s < steps; ++s) {
    const auto nbrs = all_neighbors(x);
    x = nbrs[rng.uniform_below(nbrs.size())];
  }
  return x;
}

void BM_Canonicalize(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  const Vertex x = walk_out({rank, 2}, 20, 1);
  const auto nbrs = neighbors(x, 1);
  for (auto _ : state)
    for (const auto& y : nbrs) benchmark::DoNotOptimize(canonicalize(y.matrix()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(nbrs.size()));
}
BENCHMARK(BM_Canonicalize)->Arg(1)->Arg(2)->Arg(3);

void BM_VectorDistance(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  const Vertex x = walk_out({rank, 2}, 30, 2);
  const Vertex y = walk_out({rank, 2}, 30, 3);
  for (auto _ : state) benchmark::DoNotOptimize(vector_distance(x, y));
}
BENCHMARK(BM_VectorDistance)->Arg(1)->Arg(2)->Arg(3);

void BM_Busemann(benchmark::State& state) {
  const Vertex x = walk_out({2, 2}, static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(busemann(x));
}
BENCHMARK(BM_Busemann)->Arg(10)->Arg(100);

void BM_SmithValuations(benchmark::State& state) {
  const Vertex x = walk_out({static_cast<int>(state.range(0)), 2}, 25, 5);
  const auto m = to_rational(x.matrix());
  for (auto _ : state) benchmark::DoNotOptimize(smith_valuations(m));
}
BENCHMARK(BM_SmithValuations)->Arg(1)->Arg(2);

void BM_Sphere(benchmark::State& state) {
  const Vertex o = Vertex::base({2, 2});
  const LatticeVector nu = LatticeVector::from_integers(std::vector<int>{static_cast<int>(state.range(0)), 1});
  for (auto _ : state) benchmark::DoNotOptimize(sphere(o, nu));
}
BENCHMARK(BM_Sphere)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
