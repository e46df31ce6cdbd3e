#include <benchmark/benchmark.h>

#include "dwp/gravity.hpp"
#include "dwp/orchestrator.hpp"
#include "dwp/scenarios.hpp"
#include "dwp/transport.hpp"

namespace {

using namespace dwp;

scenarios::Scenario random_2d(int n) {
  auto k = scenarios::default_knobs(scenarios::Preset::gravity_static_2d);
  return scenarios::generate(scenarios::Preset::gravity_static_2d, k,
                             Grid::make(2, {n, n, 1}, 1.0 / n, Boundary::zero_margin, 2));
}

void BM_Step1D(benchmark::State& state) {
  const auto sc = scenarios::generate(scenarios::Preset::dust_collision);
  FluidState s = sc.run.fluids[0].state;
  for (auto _ : state) {
    s = transport::step_1d(s, 1.0);
    benchmark::DoNotOptimize(s.rho.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.size()));
}
BENCHMARK(BM_Step1D);

void BM_Step2D(benchmark::State& state) {
  const auto sc = random_2d(static_cast<int>(state.range(0)));
  const FluidState s = sc.run.fluids[0].state;
  for (auto _ : state) benchmark::DoNotOptimize(transport::step_2d(s, 0.5).rho.data());
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.size()));
}
BENCHMARK(BM_Step2D)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Poisson2D(benchmark::State& state) {
  const auto sc = random_2d(static_cast<int>(state.range(0)));
  const auto& s = sc.run.fluids[0].state;
  gravity::GravityParams params;
  params.preconditioned = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(gravity::solve_poisson(s.grid, s.rho, params, 1.0).phi.data());
}
BENCHMARK(BM_Poisson2D)->Args({100, 1})->Args({200, 1})->Args({200, 0})->Unit(benchmark::kMillisecond);

void BM_GravityStep2D(benchmark::State& state) {
  const auto sc = random_2d(200);
  for (auto _ : state) benchmark::DoNotOptimize(step(sc.run, sc.params).fluids[0].state.rho.data());
}
BENCHMARK(BM_GravityStep2D)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
