#include <benchmark/benchmark.h>

#include "toycascade/dynamics.hpp"
#include "toycascade/gibbs.hpp"
#include "toycascade/minimization.hpp"
#include "toycascade/rng.hpp"
#include "toycascade/spectral.hpp"
#include "toycascade/stationary.hpp"

using namespace toycascade;

namespace {

LatticeState random_state(int n) {
  Rng rng = make_rng(17);
  return sphere_point(n, 1.0, rng);
}

void BM_Rhs(benchmark::State& state) {
  const LatticeState b = random_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rhs(b));
}
BENCHMARK(BM_Rhs)->Arg(5)->Arg(50)->Arg(500);

void BM_Rk4Steps(benchmark::State& state) {
  const LatticeState b = random_state(5);
  IntegratorConfig c;
  c.dt = 1e-3;
  c.t_final = 1.0;
  c.record_stride = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(integrate(b, c));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Rk4Steps);

void BM_HessianAssembly(benchmark::State& state) {
  const LatticeState b = random_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hessian_h(b));
}
BENCHMARK(BM_HessianAssembly)->Arg(3)->Arg(15);

void BM_JacobiEigen(benchmark::State& state) {
  const HessianMatrix a = shifted_operator(static_cast<int>(state.range(0)), 1.0, 0, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(eigen_decompose(a));
}
BENCHMARK(BM_JacobiEigen)->Arg(3)->Arg(7)->Arg(15);

void BM_NearestMinimizer(benchmark::State& state) {
  const LatticeState b = random_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nearest_minimizer(b));
}
BENCHMARK(BM_NearestMinimizer)->Arg(4)->Arg(16);

void BM_PhaseLockedSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_phase_locked(n, 1.0));
}
BENCHMARK(BM_PhaseLockedSolve)->Arg(8)->Arg(200)->Arg(5000);

void BM_MinimizeSingleStart(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(minimize_h_on_sphere(5, 1.0, 1, 3));
}
BENCHMARK(BM_MinimizeSingleStart)->Unit(benchmark::kMillisecond);

void BM_MetropolisSteps(benchmark::State& state) {
  SamplerConfig c;
  c.half_width = 4;
  c.beta = 200.0;
  c.n_steps = 100000;
  c.burn_in = 1000;
  c.thin = 100;
  ReportOptions ro;
  ro.covariance = false;
  for (auto _ : state) benchmark::DoNotOptimize(mcmc_run(c, ro));
  state.SetItemsProcessed(state.iterations() * c.n_steps);
}
BENCHMARK(BM_MetropolisSteps)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
