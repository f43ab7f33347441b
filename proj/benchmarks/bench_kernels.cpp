#include <benchmark/benchmark.h>

#include <vector>

#include "thinfilm/banded.hpp"
#include "thinfilm/fronts.hpp"
#include "thinfilm/geometry.hpp"
#include "thinfilm/model.hpp"
#include "thinfilm/stepper.hpp"

namespace {

using namespace thinfilm;

struct Setup {
  Grid grid;
  ModelParams params;
  std::vector<double> u;

  explicit Setup(std::size_t n) : grid(n, 1e-6) {
    params.face_mean = FaceMean::harmonic;
    ScenarioSpec sc;
    u = lift_initial_data(sc.initial_profile(grid), params);
  }
};

void BM_Rhs(benchmark::State& state) {
  Setup s(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rhs(s.grid, s.params, s.u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rhs)->RangeMultiplier(2)->Range(256, 4096)->Complexity(benchmark::oN);

void BM_Jacobian(benchmark::State& state) {
  Setup s(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rhs_jacobian(s.grid, s.params, s.u));
}
BENCHMARK(BM_Jacobian)->RangeMultiplier(2)->Range(256, 4096);

void BM_BandedFactorSolve(benchmark::State& state) {
  Setup s(static_cast<std::size_t>(state.range(0)));
  const BandedMatrix jac = rhs_jacobian(s.grid, s.params, s.u);
  std::vector<double> b(s.u.size(), 1.0);
  for (auto _ : state) {
    BandedMatrix m = jac;
    for (std::size_t i = 0; i < s.u.size(); ++i) m(i, i) += 1.0;
    m.factorize();
    std::vector<double> x = b;
    m.solve(x);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_BandedFactorSolve)->RangeMultiplier(2)->Range(256, 4096);

void BM_BackwardEulerStep(benchmark::State& state) {
  Setup s(static_cast<std::size_t>(state.range(0)));
  StepperConfig cfg;
  const State st{0.0, s.u};
  for (auto _ : state) benchmark::DoNotOptimize(backward_euler_step(st, 1e-9, s.grid, s.params, cfg, 1.0));
}
BENCHMARK(BM_BackwardEulerStep)->Arg(256)->Arg(512)->Arg(1024);

void BM_DeadCoreHalfwidth(benchmark::State& state) {
  Setup s(512);
  for (auto _ : state) benchmark::DoNotOptimize(dead_core_halfwidth(s.grid, s.u, 1e-3));
}
BENCHMARK(BM_DeadCoreHalfwidth);

}  // namespace

BENCHMARK_MAIN();
