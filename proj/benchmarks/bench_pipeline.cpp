#include <benchmark/benchmark.h>

#include "vaxprice/bec_equilibrium.hpp"
#include "vaxprice/demand_estimation.hpp"
#include "vaxprice/market_model.hpp"
#include "vaxprice/negotiation_optimizer.hpp"
#include "vaxprice/scenario_sweep.hpp"

namespace {

using namespace vaxprice;

ScenarioConfig tight_scenario() {
  ScenarioConfig config;
  config.total_demand = 157.05;
  config.gamma = 0.75;
  config.params[0] = {250.0, 234.0, 31.96};
  config.params[1] = {200.0, 41.4, 31.96};
  return config;
}

ScenarioConfig infeasible_scenario() {
  auto config = tight_scenario();
  config.params[0].target_profit = 2570.0;
  config.params[1].target_profit = 2570.0;
  return config;
}

void BM_EstimateDemandCurve(benchmark::State& state) {
  const auto& records = bundled_flu_data();
  for (auto _ : state) {
    auto curve = estimate_demand_curve(records, 0.75, 6, 0.57, {31.96, 31.96});
    benchmark::DoNotOptimize(curve);
  }
}
BENCHMARK(BM_EstimateDemandCurve);

void BM_EvaluatePoint(benchmark::State& state) {
  const auto problem = build_problem(bundled_flu_data(), tight_scenario());
  double p1 = 40.0;
  for (auto _ : state) {
    p1 += 1e-9;  // defeat constant folding
    auto ev = evaluate_point(problem, {p1, 54.9});
    benchmark::DoNotOptimize(ev);
  }
}
BENCHMARK(BM_EvaluatePoint);

void BM_Solve(benchmark::State& state) {
  const auto problem = build_problem(bundled_flu_data(), tight_scenario());
  for (auto _ : state) {
    auto solution = solve(problem);
    benchmark::DoNotOptimize(solution);
  }
}
BENCHMARK(BM_Solve);

void BM_SolveInfeasible(benchmark::State& state) {
  const auto problem = build_problem(bundled_flu_data(), infeasible_scenario());
  for (auto _ : state) {
    auto solution = solve(problem);
    benchmark::DoNotOptimize(solution);
  }
}
BENCHMARK(BM_SolveInfeasible);

void BM_OracleSolve(benchmark::State& state) {
  const auto problem = build_problem(bundled_flu_data(), tight_scenario());
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto result = oracle_solve(problem, n);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n) * n);
}
BENCHMARK(BM_OracleSolve)->Arg(256)->Arg(1024)->Arg(2000);

void BM_DefaultGrid(benchmark::State& state) {
  for (auto _ : state) {
    auto grid = default_sweep_grid();
    benchmark::DoNotOptimize(grid);
  }
}
BENCHMARK(BM_DefaultGrid);

void BM_Sweep64(benchmark::State& state) {
  auto grid = default_sweep_grid();
  grid.resize(64);
  const auto& records = bundled_flu_data();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rows = run_sweep(grid, records, jobs);
    benchmark::DoNotOptimize(rows);
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_Sweep64)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
