// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "fbf/fbf.hpp"
#include "fbf/oracle.hpp"
#include "fbf/saddle.hpp"

namespace {

using namespace fbf;

const BoxSet& unit_square() {
  static const BoxSet k = BoxSet::cube(2, 0.0, 1.0);
  return k;
}

BepInstance example_instance() {
  Point c(2);
  c << 0.5, 0.5;
  return build_saddle_bep(example_problem(), ProxBifunction(c, 1.0, unit_square()));
}

void BM_Step(benchmark::State& state) {
  const BepInstance inst = example_instance();
  Point x(2);
  x << 0.5, 0.5;
  for (auto _ : state) {
    auto r = fbf_step(inst, x, 0.9, 1.0);
    benchmark::DoNotOptimize(r.x_next);
  }
}
BENCHMARK(BM_Step);

void BM_RunGrowingPenalty(benchmark::State& state) {
  const BepInstance inst = example_instance();
  const Schedule sched = Schedule::coupled(0.9, inst.lipschitz(), BetaLaw{1.0, 1.0, 0.5});
  Point x0(2);
  x0 << 0.5, 0.5;
  for (auto _ : state) {
    auto t = run_fbf(inst, x0, sched);
    benchmark::DoNotOptimize(t.final_point);
  }
}
BENCHMARK(BM_RunGrowingPenalty)->Unit(benchmark::kMillisecond);

void BM_PairedResolvent(benchmark::State& state) {
  const DenseMatrix eye = DenseMatrix::Identity(1, 1);
  const PairedOperatorBifunction g(AffineMap(eye, Point::Constant(1, -0.3)).as_monotone(),
                                   AffineMap(eye, Point::Constant(1, -0.7)).as_monotone(),
                                   unit_square(), ResolventOptions{1e-12, 1'000'000, 5});
  Point x(2);
  x << 0.9, 0.1;
  for (auto _ : state) {
    auto z = operator_resolvent(g, 1.0, x);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BM_PairedResolvent);

void BM_SpectralNorm(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = nd(rng);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(m));
}
BENCHMARK(BM_SpectralNorm)->Arg(4)->Arg(32)->Arg(128);

void BM_GridOracle(benchmark::State& state) {
  const BepInstance inst = example_instance();
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_bep_grid(inst, grid, 1e-9));
}
BENCHMARK(BM_GridOracle)->Arg(21)->Arg(51)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
