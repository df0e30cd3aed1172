#include <benchmark/benchmark.h>

#include "polytree/build_tree.hpp"
#include "polytree/degeneration.hpp"
#include "polytree/escape.hpp"

using namespace polytree;

static void BM_EscapeRate(benchmark::State& state) {
  const Polynomial f = parse_polynomial("0.01,1,0,0");
  Complex z(0.5, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(escape_rate(f, z));
    z += Complex(1e-7, 0.0);
  }
}
BENCHMARK(BM_EscapeRate);

static void BM_BuildTree(benchmark::State& state) {
  const Polynomial f = parse_polynomial("1,0,-6");
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_tree(f, depth));
}
BENCHMARK(BM_BuildTree)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

static void BM_BuildCubicTree(benchmark::State& state) {
  const Polynomial f = parse_polynomial("0.01,1,0,0");
  for (auto _ : state) benchmark::DoNotOptimize(build_tree(f, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildCubicTree)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_RootsOfIterate(benchmark::State& state) {
  const Polynomial f = parse_polynomial("1,0,-6");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(roots_of_iterate(f, n));
}
BENCHMARK(BM_RootsOfIterate)->DenseRange(1, 8)->Unit(benchmark::kMicrosecond);

static void BM_LimitMeasure(benchmark::State& state) {
  const FamilySpec spec = parse_family("t,0,-t", "10^j, j=0..6");
  for (auto _ : state) benchmark::DoNotOptimize(limit_measure(spec));
}
BENCHMARK(BM_LimitMeasure)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
