#include <benchmark/benchmark.h>

#include "skolem/backtrack.hpp"

namespace {

void BM_CountExact(benchmark::State& state) {
  const auto v = state.range(0) ? skolem::Variant::Langford : skolem::Variant::Skolem;
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(skolem::count_exact(v, n, skolem::CountMode::AllSequences));
}
BENCHMARK(BM_CountExact)
    ->Args({0, 9})
    ->Args({0, 12})
    ->Args({1, 11})
    ->Args({1, 12})
    ->Unit(benchmark::kMillisecond);

}  // namespace
