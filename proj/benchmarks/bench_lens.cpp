#include <benchmark/benchmark.h>

#include "surgery/lens.hpp"

using namespace surgery;

static void BM_DLensTable(benchmark::State& state) {
  lens::LensSpace L(static_cast<std::int64_t>(state.range(0)), 2);
  for (auto _ : state) {
    lens::DTable tab(L);
    benchmark::DoNotOptimize(tab[0]);
  }
}
BENCHMARK(BM_DLensTable)->Arg(61)->Arg(199);

static void BM_DLensSingle(benchmark::State& state) {
  lens::LensSpace L(997, 618);
  for (auto _ : state) {
    auto v = lens::d_lens(L, 123);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_DLensSingle);
