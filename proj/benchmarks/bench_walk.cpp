#include <benchmark/benchmark.h>

#include "ersl/generate.hpp"
#include "ersl/walk.hpp"

namespace {

void BM_walk_full(benchmark::State& state) {
  ersl::RealizationSpec spec;
  spec.kind = ersl::ModelKind::full;
  spec.n = 256;
  ersl::EdgeGrid g = ersl::generate_window(spec).grid;
  ersl::WalkConfig wc;
  wc.n_walkers = state.range(0);
  wc.t_max = 100.0;
  wc.sample_times = ersl::geometric_times(1.0, 100.0, 16);
  wc.seed = 7;
  for (auto _ : state)
    benchmark::DoNotOptimize(ersl::simulate_walks(g, wc).points.back().mean);
  state.SetItemsProcessed(state.iterations() * wc.n_walkers);
}

void BM_walk_diluted(benchmark::State& state) {
  ersl::RealizationSpec spec;
  spec.kind = ersl::ModelKind::bernoulli;
  spec.n = 256;
  spec.p0 = 0.7;
  spec.seed = 3;
  ersl::EdgeGrid g = ersl::generate_window(spec).grid;
  ersl::WalkConfig wc;
  wc.n_walkers = state.range(0);
  wc.t_max = 100.0;
  wc.sample_times = ersl::geometric_times(1.0, 100.0, 16);
  wc.seed = 7;
  for (auto _ : state)
    benchmark::DoNotOptimize(ersl::simulate_walks(g, wc).points.back().mean);
  state.SetItemsProcessed(state.iterations() * wc.n_walkers);
}

BENCHMARK(BM_walk_full)->Arg(1000)->Arg(4000);
BENCHMARK(BM_walk_diluted)->Arg(1000)->Arg(4000);

}  // namespace

BENCHMARK_MAIN();
