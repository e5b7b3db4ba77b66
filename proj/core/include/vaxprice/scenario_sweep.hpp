#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vaxprice/demand_estimation.hpp"
#include "vaxprice/market_model.hpp"
#include "vaxprice/negotiation_optimizer.hpp"

namespace vaxprice {

/// One solved scenario: the swept parameters echoed verbatim plus the
/// negotiation outcome and the exogenous private equilibrium.
struct SweepResultRow {
  int scenario_id = 0;
  double total_demand = 0.0;
  double gamma = 0.0;
  std::array<double, 2> target_profit{};
  std::array<double, 2> unit_cost{};
  SolveStatus status = SolveStatus::Error;
  std::array<double, 2> p_pub{};
  std::array<double, 2> q_pub{};
  double p_priv = 0.0;
  double q_priv = 0.0;
  std::array<double, 2> profit{};
  double objective = 0.0;
};

/// Demand curve, equilibrium and reduced problem for one scenario.
ReducedProblem build_problem(std::span<const HistoricalRecord> records,
                             const ScenarioConfig& config);

/// Runs estimate -> equilibrium -> solve for every scenario. jobs is the
/// number of worker threads (0 picks the hardware concurrency); the output
/// is ordered by scenario_id and byte-identical for any jobs value. A
/// scenario that throws is recorded with status ERROR and NaN results
/// instead of aborting the sweep.
std::vector<SweepResultRow> run_sweep(std::span<const ScenarioConfig> grid,
                                      std::span<const HistoricalRecord> records,
                                      int jobs,
                                      const SolverTolerances& tolerances = {});

/// Counts by status plus the interior price centroid (absent when no row is
/// interior) and the interior rows inside the price bands. Error rows are
/// excluded from every aggregate.
SweepSummary summarize(std::span<const SweepResultRow> rows,
                       PriceBand band_1 = {34.0, 44.0},
                       PriceBand band_2 = {45.0, 55.0});

/// Interior rows whose prices fall inside both closed bands, by scenario_id.
std::vector<SweepResultRow> filter_by_band(std::span<const SweepResultRow> rows,
                                           PriceBand band_1, PriceBand band_2);

// Sweep CSV, header row, columns exactly:
//   scenario_id,D,gamma,P_pf,P_mod,d_pf,d_mod,status,p_pub_pf,p_pub_mod,
//   q_pub_pf,q_pub_mod,p_priv,q_priv,profit_pf,profit_mod,objective
// Doubles are written in shortest round-trip form, so load(write(rows))
// reproduces rows exactly.
std::string sweep_to_csv(std::span<const SweepResultRow> rows);
void write_sweep_csv(const std::filesystem::path& path,
                     std::span<const SweepResultRow> rows);
std::vector<SweepResultRow> load_sweep_csv(const std::filesystem::path& path);

std::string summary_to_json(const SweepSummary& summary);

/// Interior (p_pub_pf, p_pub_mod, D) triples: the price-vs-demand scatter.
std::string demand_price_export_csv(std::span<const SweepResultRow> rows);

/// Interior public prices grouped per manufacturer and unit-cost level:
/// long-format rows manufacturer,d,p_pub for box-plot style summaries.
std::string cost_price_export_csv(std::span<const SweepResultRow> rows);

}  // namespace vaxprice
