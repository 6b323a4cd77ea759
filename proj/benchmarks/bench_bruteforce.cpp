#include <benchmark/benchmark.h>

#include "conicmin/bruteforce.hpp"

namespace conicmin {
namespace {

void BM_BruteMin(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const long r = state.range(1);
  Vector target(n);
  for (std::size_t i = 0; i < n; ++i) target[i] = Scalar(static_cast<long>(i) + 1, 3);
  ComparisonOracle f = from_value_oracle(quadratic_oracle(Matrix::identity(n), target));
  EnumerationDomain dom = EnumerationDomain::integer_ball(Vector(n), Scalar(r));
  std::size_t points = 0;
  for (auto _ : state) {
    std::vector<Vector> pts = enumerate(dom);
    points = pts.size();
    benchmark::DoNotOptimize(brute_min(f, pts));
  }
  state.counters["points"] = static_cast<double>(points);
}
BENCHMARK(BM_BruteMin)->ArgsProduct({{2}, {8, 32}})->ArgsProduct({{3}, {4, 8}})->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace conicmin
