// Serial reference kernels against their OpenMP versions.

#include "freyforge/hypotheses.hpp"
#include "freyforge/search.hpp"

#include <benchmark/benchmark.h>

using namespace freyforge;

namespace {

SearchSpec search_spec(long d) { return {QuadraticField::make(d), 5, d == 1 ? 400 : 8}; }

void BM_search_serial(benchmark::State& state) {
  const auto spec = search_spec(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_solutions_serial(spec));
}

void BM_search_parallel(benchmark::State& state) {
  const auto spec = search_spec(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_solutions(spec, static_cast<int>(state.range(1))));
}

void BM_tk_serial(benchmark::State& state) {
  const UnitContext ctx(QuadraticField::make(state.range(0)));
  const auto prime = s_k(ctx.field())[0];
  for (auto _ : state) benchmark::DoNotOptimize(tk_falsifier_serial(ctx, prime, 4));
}

void BM_tk_parallel(benchmark::State& state) {
  const UnitContext ctx(QuadraticField::make(state.range(0)));
  const auto prime = s_k(ctx.field())[0];
  for (auto _ : state) benchmark::DoNotOptimize(tk_falsifier(ctx, prime, 4, static_cast<int>(state.range(1))));
}

}  // namespace

BENCHMARK(BM_search_serial)->Arg(1)->Arg(-7)->Arg(5)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_search_parallel)->ArgsProduct({{1, -7, 5}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_tk_serial)->Arg(1)->Arg(5)->Arg(-1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_tk_parallel)->ArgsProduct({{1, 5, -1}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
