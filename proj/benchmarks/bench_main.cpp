#include <benchmark/benchmark.h>

#include <vector>

#include "ramlab/builders.hpp"
#include "ramlab/graph.hpp"
#include "ramlab/spectral.hpp"
#include "ramlab/walk.hpp"

using namespace ramlab;

namespace {

const RegularGraph& lps29() {
  static const RegularGraph g = build::build_lps({5, 29});
  return g;
}

void BM_SrwStep(benchmark::State& state) {
  const auto& g = lps29();
  const auto edges = validate_and_index(g);
  std::vector<double> in(g.n(), 1.0 / static_cast<double>(g.n())), out(g.n());
  for (auto _ : state) {
    walk::step_into(g, edges, walk::Kernel::Srw, in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(edges.size()));
}
BENCHMARK(BM_SrwStep);

void BM_NbrwStep(benchmark::State& state) {
  const auto& g = lps29();
  const auto edges = validate_and_index(g);
  std::vector<double> in(edges.size(), 1.0 / static_cast<double>(edges.size())), out(edges.size());
  for (auto _ : state) {
    walk::step_into(g, edges, walk::Kernel::Nbrw, in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(edges.size()));
}
BENCHMARK(BM_NbrwStep);

void BM_Bfs(benchmark::State& state) {
  const auto& g = lps29();
  for (auto _ : state) benchmark::DoNotOptimize(bfs_distances(g, 0));
}
BENCHMARK(BM_Bfs);

void BM_RandomRegular(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(build::build_random_regular(static_cast<std::size_t>(state.range(0)), 3, seed++));
}
BENCHMARK(BM_RandomRegular)->Arg(1000)->Arg(10000);

void BM_Decomposition(benchmark::State& state) {
  const auto g = build::build_random_regular(static_cast<std::size_t>(state.range(0)), 3, 7);
  const auto edges = validate_and_index(g);
  for (auto _ : state) {
    const auto eigen = spectral::adjacency_eigensystem(g);
    benchmark::DoNotOptimize(spectral::build_decomposition(g, edges, eigen));
  }
}
BENCHMARK(BM_Decomposition)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
