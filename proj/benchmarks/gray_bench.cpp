#include <benchmark/benchmark.h>

#include "skolem/jobs.hpp"

namespace {

// One job over the reduced cube; reports polynomial evaluations per second.
void BM_GrayWalk(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto path = static_cast<skolem::Accumulation>(state.range(1));
  const auto jobs = skolem::partition(n, skolem::Variant::Skolem, 1);
  std::uint64_t steps = 0;
  for (auto _ : state) {
    const auto r = skolem::count_gray(jobs.front(), path);
    benchmark::DoNotOptimize(r.checksum);
    steps += r.steps;
  }
  state.counters["evals/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_GrayWalk)
    ->ArgsProduct({{9, 12, 13}, {static_cast<int>(skolem::Accumulation::Exact128),
                                 static_cast<int>(skolem::Accumulation::Modular)}})
    ->Unit(benchmark::kMillisecond);

void BM_Flip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  skolem::GrayState g(skolem::Variant::Skolem, n, skolem::SignVector::all_plus(n));
  std::uint64_t step = 0;
  for (auto _ : state) {
    g.flip(__builtin_ctzll(++step) % (2 * n) + 1);
    benchmark::DoNotOptimize(g.sums().data());
  }
}
BENCHMARK(BM_Flip)->Arg(12)->Arg(16)->Arg(24);

}  // namespace
