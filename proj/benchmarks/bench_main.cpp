#include <benchmark/benchmark.h>

#include <cmath>

#include "softwall/fp/solver.hpp"
#include "softwall/fp/tridiagonal.hpp"
#include "softwall/sim/paths.hpp"

namespace {

using namespace softwall;

void BM_ThomasSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  fp::TridiagonalSystem sys;
  sys.lower.assign(n, -1.0);
  sys.diag.assign(n, 4.0);
  sys.upper.assign(n, -1.0);
  sys.rhs.assign(n, 1.0);
  sys.lower.front() = 0.0;
  sys.upper.back() = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(fp::thomas_solve(sys));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ThomasSolve)->RangeMultiplier(4)->Range(256, 16384);

void BM_SemiImplicitStep(benchmark::State& state) {
  fp::SolverConfig cfg;
  cfg.n_cells = static_cast<std::size_t>(state.range(0));
  cfg.spec.delta = 1.0 / 16.0;
  const fp::LogisticGrid grid(cfg.x_min, cfg.x_max, cfg.n_cells);
  fp::DensityState s = fp::initial_state(grid, cfg);
  std::size_t m = 0;
  for (auto _ : state) {
    fp::step_semi_implicit(s, grid, cfg, nullptr, m++);
    if (s.firing.times.size() > 4096) s.firing = {};
  }
}
BENCHMARK(BM_SemiImplicitStep)->Arg(512)->Arg(1024)->Arg(4096);

void BM_FullSolve(benchmark::State& state) {
  fp::SolverConfig cfg;
  cfg.spec.delta = 1.0 / 16.0;
  for (auto _ : state) benchmark::DoNotOptimize(fp::solve_fp(cfg));
}
BENCHMARK(BM_FullSolve)->Unit(benchmark::kMillisecond);

void BM_DischargePaths(benchmark::State& state) {
  sim::SimConfig cfg;
  cfg.spec.delta = 0.125;
  cfg.x0_sigma = 0.1;
  cfg.observe_times = {1.0};
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sim::simulate_ensemble(sim::PathModel::Discharge, cfg, 7, n, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_DischargePaths)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_HardWallPaths(benchmark::State& state) {
  sim::SimConfig cfg;
  cfg.x0_sigma = 0.1;
  cfg.observe_times = {1.0};
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sim::simulate_ensemble(sim::PathModel::HardWall, cfg, 7, n, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_HardWallPaths)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
