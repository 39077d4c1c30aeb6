#include <benchmark/benchmark.h>

#include "ersl/generate.hpp"

namespace {

ersl::RealizationSpec spec_for(ersl::ModelKind kind, std::int64_t n) {
  ersl::RealizationSpec spec;
  spec.params.p = 0.65;
  spec.params.q = 0.3;
  spec.params.sigma = 0.25;
  spec.params.L = 2;
  spec.kind = kind;
  spec.n = n;
  return spec;
}

void BM_generate_ersl(benchmark::State& state) {
  ersl::RealizationSpec spec = spec_for(ersl::ModelKind::ersl, state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    spec.seed = seed++;
    benchmark::DoNotOptimize(ersl::generate_window(spec).grid.count_open());
  }
  state.SetItemsProcessed(state.iterations() * 2 * spec.n * (spec.n + 1));
}

void BM_generate_unfilled(benchmark::State& state) {
  ersl::RealizationSpec spec =
      spec_for(ersl::ModelKind::rsl_elongated_unfilled, state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    spec.seed = seed++;
    benchmark::DoNotOptimize(ersl::generate_window(spec).grid.count_open());
  }
  state.SetItemsProcessed(state.iterations() * 2 * spec.n * (spec.n + 1));
}

void BM_generate_bernoulli(benchmark::State& state) {
  ersl::RealizationSpec spec =
      spec_for(ersl::ModelKind::bernoulli, state.range(0));
  spec.p0 = 0.5;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    spec.seed = seed++;
    benchmark::DoNotOptimize(ersl::generate_window(spec).grid.count_open());
  }
  state.SetItemsProcessed(state.iterations() * 2 * spec.n * (spec.n + 1));
}

BENCHMARK(BM_generate_ersl)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_generate_unfilled)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_generate_bernoulli)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
