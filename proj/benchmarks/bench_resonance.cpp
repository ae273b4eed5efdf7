#include <benchmark/benchmark.h>

#include "resonance/bvp_curve.hpp"
#include "resonance/oscillatory.hpp"
#include "resonance/special_functions.hpp"

using namespace resonance;

namespace {

void BM_BesselJ(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j(1.5, x));
    x = x < 15.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(BM_BesselJ);

void BM_EigenPair(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eigenpair(n));
}
BENCHMARK(BM_EigenPair)->Arg(3)->Arg(6)->Arg(10);

void BM_KDirect(benchmark::State& state) {
  const RadialIntegral ctx(6);
  const TrigPolynomial g = *periodic_from_catalog("sin");
  const double xi = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ctx.direct(g, xi));
}
BENCHMARK(BM_KDirect)->Arg(20)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_KByParts(benchmark::State& state) {
  const RadialIntegral ctx(6);
  const AntiderivativeChain chain = antiderivative_chain(*periodic_from_catalog("sin"));
  const double xi = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ctx.by_parts(chain, xi, 3));
}
BENCHMARK(BM_KByParts)->Arg(20)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_SolveAtXi1(benchmark::State& state) {
  ProblemSpec spec = one_dim_problem(general_from_catalog("sinsqrt"), "sinsqrt", forcing_from_catalog("sin3x"), "sin3x");
  spec.mesh_size = static_cast<int>(state.range(0));
  const CurveSolver solver(spec);
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(20.0));
}
BENCHMARK(BM_SolveAtXi1)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
