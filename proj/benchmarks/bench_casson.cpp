#include <benchmark/benchmark.h>

#include "surgery/casson.hpp"

using namespace surgery;

static void BM_DedekindSum(benchmark::State& state) {
  Integer a = state.range(0);
  for (auto _ : state) {
    auto v = casson::dedekind_sum(2, a);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_DedekindSum)->Arg(199)->Arg(1999);
