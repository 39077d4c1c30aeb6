#include <benchmark/benchmark.h>

#include "ersl/dirichlet.hpp"
#include "ersl/generate.hpp"

namespace {

ersl::EdgeGrid window(std::int64_t n, std::uint64_t seed, double p0) {
  ersl::RealizationSpec spec;
  spec.kind = ersl::ModelKind::bernoulli;
  spec.n = n;
  spec.seed = seed;
  spec.p0 = p0;
  return ersl::generate_window(spec).grid;
}

void BM_solve_cg(benchmark::State& state) {
  ersl::EdgeGrid g = window(state.range(0), 42, 0.7);
  for (auto _ : state)
    benchmark::DoNotOptimize(ersl::solve_dirichlet(g).energy);
  state.SetItemsProcessed(state.iterations() * g.vertex_count());
}

void BM_solve_full(benchmark::State& state) {
  ersl::RealizationSpec spec;
  spec.kind = ersl::ModelKind::full;
  spec.n = state.range(0);
  ersl::EdgeGrid g = ersl::generate_window(spec).grid;
  for (auto _ : state)
    benchmark::DoNotOptimize(ersl::solve_dirichlet(g).energy);
  state.SetItemsProcessed(state.iterations() * g.vertex_count());
}

void BM_solve_dense_reference(benchmark::State& state) {
  ersl::EdgeGrid g = window(state.range(0), 42, 0.7);
  for (auto _ : state)
    benchmark::DoNotOptimize(ersl::dense_oracle(g).energy);
}

BENCHMARK(BM_solve_cg)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_solve_full)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_solve_dense_reference)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
