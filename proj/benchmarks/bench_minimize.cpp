#include <benchmark/benchmark.h>

#include "conicmin/minimizer.hpp"
#include "conicmin_tools/harness.hpp"

namespace conicmin {
namespace {

// Oracle calls are the cost measure; wall time is secondary.
void BM_MinimizeQuadratic(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const long r = state.range(1);
  ProblemInstance p = tools::bench_quadratic(n, r, 0);
  std::uint64_t calls = 0;
  for (auto _ : state) {
    MinimizeResult res = minimize(p);
    calls = res.oracle_calls;
    benchmark::DoNotOptimize(res);
  }
  state.counters["oracle_calls"] = static_cast<double>(calls);
}
BENCHMARK(BM_MinimizeQuadratic)
    ->ArgsProduct({{2}, benchmark::CreateRange(4, 512, 2)})
    ->ArgsProduct({{3}, {4, 8, 16}})
    ->Unit(benchmark::kMillisecond);

void BM_Gcd(benchmark::State& state) {
  const long a = state.range(0);
  const long b = state.range(0) * 3 / 4 + 1;
  for (auto _ : state) benchmark::DoNotOptimize(tools::cmd_gcd(a, b, false));
}
BENCHMARK(BM_Gcd)->RangeMultiplier(10)->Range(10, 100000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace conicmin
