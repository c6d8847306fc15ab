#include <benchmark/benchmark.h>

#include "surgery/obstruction.hpp"

using namespace surgery;

static void BM_CheckCandidate(benchmark::State& state) {
  for (auto _ : state) {
    auto rep = obstruction::check_candidate(19, -37, 2, 1);
    benchmark::DoNotOptimize(rep.verdict);
  }
}
BENCHMARK(BM_CheckCandidate);

static void BM_EnumerateSmall(benchmark::State& state) {
  for (auto _ : state) {
    auto reps = obstruction::enumerate_candidates(9, 30);
    benchmark::DoNotOptimize(reps.size());
  }
}
BENCHMARK(BM_EnumerateSmall);
