// Serial reference closure against the batched OpenMP kernel.

#include <benchmark/benchmark.h>

#include "machina/closure.hpp"
#include "machina/mealy.hpp"

namespace {

using namespace machina;

std::vector<PointedTransducer> gens_for(int which) {
  switch (which) {
    case 0:
      return generators(dual_cayley(named("rightzero:2")));
    case 1:
      return generators(cayley(named("cyclic:3")));
    default:
      return generators(dual_cayley(named("rightzero:3")));
  }
}

Budget budget_for(int which) {
  Budget b;
  b.max_elements = which == 0 ? 4'000 : which == 1 ? 3'000 : 1'500;
  return b;
}

void BM_ClosureReference(benchmark::State& state) {
  auto const gens = gens_for(static_cast<int>(state.range(0)));
  auto const b    = budget_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(closure_reference(gens, b));
  }
}

void BM_ClosureParallel(benchmark::State& state) {
  auto const gens = gens_for(static_cast<int>(state.range(0)));
  auto const b    = budget_for(static_cast<int>(state.range(0)));
  ClosureOptions options{static_cast<std::size_t>(state.range(1)), 256};
  for (auto _ : state) {
    benchmark::DoNotOptimize(closure(gens, b, options));
  }
}

}  // namespace

BENCHMARK(BM_ClosureReference)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosureParallel)
    ->ArgsProduct({{0, 1, 2}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
