#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "elasticflow/discretization.hpp"
#include "elasticflow/flow.hpp"
#include "elasticflow/specialfn.hpp"

using namespace elasticflow;

namespace {

GridFunction uc(std::size_t n, double c) {
  GridFunction u = GridFunction::sample(UniformGrid(n), [c](double x) { return specialfn::u_c_value(c, x); });
  u[0] = u[n] = 0.0;
  return u;
}

void BM_EnergyGradient(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const GridFunction u = GridFunction::sample(UniformGrid(n), [](double x) { return 0.3 * std::sin(std::numbers::pi * x); });
  for (auto _ : state) benchmark::DoNotOptimize(energy_gradient(u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnergyGradient)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_MMStepCone(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Obstacle psi = Obstacle::cone(UniformGrid(n), 0.02);
  const GridFunction f = uc(n, 0.5);
  FlowConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(mm_step(f, psi, cfg));
}
BENCHMARK(BM_MMStepCone)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Hyp2F1(benchmark::State& state) {
  const double A = static_cast<double>(state.range(0));
  const double x = A * A / (1.0 + A * A);
  for (auto _ : state) benchmark::DoNotOptimize(specialfn::hyp2f1({1.0, 0.25, 0.75}, x));
}
BENCHMARK(BM_Hyp2F1)->Arg(1)->Arg(10)->Arg(100);

void BM_GInverse(benchmark::State& state) {
  const double y = 0.5 * specialfn::c0() * (static_cast<double>(state.range(0)) / 1000.0);
  for (auto _ : state) benchmark::DoNotOptimize(specialfn::g_inv(y));
}
BENCHMARK(BM_GInverse)->Arg(100)->Arg(900)->Arg(999);

}  // namespace

BENCHMARK_MAIN();
