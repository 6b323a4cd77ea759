#include <benchmark/benchmark.h>

#include <random>

#include "conicmin/lattice.hpp"

namespace conicmin {
namespace {

LatticeBasis random_lattice(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(-20, 20);
  for (;;) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
    if (sgn(determinant(m)) != 0) return LatticeBasis(m);
  }
}

void BM_Lll(benchmark::State& state) {
  LatticeBasis l = random_lattice(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(lll_reduce(l));
}
BENCHMARK(BM_Lll)->DenseRange(2, 6);

void BM_Svp(benchmark::State& state) {
  LatticeBasis l = random_lattice(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(shortest_vector(l));
}
BENCHMARK(BM_Svp)->DenseRange(2, 5);

void BM_Cvp(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  LatticeBasis l = random_lattice(n, 3);
  Vector target(n);
  for (std::size_t i = 0; i < n; ++i) target[i] = Scalar(static_cast<long>(7 * i + 3), 5);
  for (auto _ : state) benchmark::DoNotOptimize(closest_vector(l, target));
}
BENCHMARK(BM_Cvp)->DenseRange(2, 5);

void BM_Flatness(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Matrix a = random_lattice(n, 4).basis();
  Ellipsoid e(Scalar(1, 7) * a, Vector(n));
  for (auto _ : state) benchmark::DoNotOptimize(flatness_direction_integer(e));
}
BENCHMARK(BM_Flatness)->DenseRange(2, 4);

}  // namespace
}  // namespace conicmin
