// vaxprice: duopoly vaccine-market pricing pipeline.
//
// Subcommands: estimate, equilibrium, solve, sweep, report. Exit codes:
// 0 success, 1 validation or input error, 2 infeasible single-scenario solve.
// Money flags are USD per two-dose regimen, quantity flags are millions of
// regimens; JSON/CSV schemas are documented in the README.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vaxprice/bec_equilibrium.hpp"
#include "vaxprice/demand_estimation.hpp"
#include "vaxprice/market_model.hpp"
#include "vaxprice/negotiation_optimizer.hpp"
#include "vaxprice/scenario_sweep.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

std::vector<vaxprice::HistoricalRecord> records_from(
    const std::optional<std::string>& data_path) {
  if (data_path) return vaxprice::load_historical(*data_path);
  return vaxprice::bundled_flu_data();
}

std::array<double, 2> parse_pair(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument(std::string(flag) +
                                " expects two comma-separated numbers");
  try {
    size_t used = 0;
    const double first = std::stod(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("");
    const std::string rest = text.substr(comma + 1);
    const double second = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
    return {first, second};
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(flag) +
                                " expects two comma-separated numbers, got '" +
                                text + "'");
  }
}

vaxprice::PriceBand parse_band(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument(std::string(flag) + " expects LO:HI in USD");
  try {
    const double lo = std::stod(text.substr(0, colon));
    const double hi = std::stod(text.substr(colon + 1));
    if (!(lo < hi)) throw std::invalid_argument("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(flag) + " expects LO:HI with LO < HI, got '" +
                                text + "'");
  }
}

ordered_json solution_to_json(const vaxprice::NegotiationSolution& s) {
  ordered_json j;
  j["status"] = vaxprice::to_string(s.status);
  j["p_pub"] = s.p_pub;
  j["q_pub"] = s.q_pub;
  j["z"] = s.z;
  j["objective"] = s.objective;
  j["realized_profit"] = s.realized_profit;
  j["max_violation"] = s.max_violation;
  j["certificate_gap"] = s.certificate_gap;
  return j;
}

int cmd_estimate(const std::optional<std::string>& data, double gamma,
                 const std::string& costs_text, double r_pub, int k) {
  const auto costs = parse_pair(costs_text, "--d-usd");
  const auto records = records_from(data);
  const vaxprice::DemandCurve curve =
      vaxprice::estimate_demand_curve(records, gamma, k, r_pub, costs);
  ordered_json j;
  j["a_pub"] = curve.a_pub;
  j["a_priv"] = curve.a_priv;
  j["b"] = curve.b;
  j["c"] = curve.c;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_equilibrium(const std::optional<std::string>& data, double gamma,
                    const std::string& costs_text, double r_pub, int k) {
  const auto costs = parse_pair(costs_text, "--d-usd");
  const auto records = records_from(data);
  const vaxprice::DemandCurve curve =
      vaxprice::estimate_demand_curve(records, gamma, k, r_pub, costs);
  const vaxprice::PrivateEquilibrium eq =
      vaxprice::private_equilibrium(curve, gamma);
  ordered_json j;
  j["p_priv"] = eq.p_priv;
  j["q_priv_millions"] = eq.q_priv;
  j["surplus_bound_millions"] = eq.surplus_bound;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_solve(const std::string& config_path,
              const std::optional<std::string>& data, int oracle_n) {
  const vaxprice::ScenarioConfig config = vaxprice::load_scenario(config_path);
  const auto records = records_from(data);
  const vaxprice::ReducedProblem problem =
      vaxprice::build_problem(records, config);
  const vaxprice::NegotiationSolution solution = vaxprice::solve(problem);
  ordered_json j = solution_to_json(solution);
  if (oracle_n > 0) {
    const vaxprice::OracleResult oracle =
        vaxprice::oracle_solve(problem, oracle_n);
    j["oracle"] = {{"feasible", oracle.feasible},
                   {"p_pub", oracle.p_pub},
                   {"objective", oracle.objective},
                   {"min_violation", oracle.min_violation}};
  }
  std::cout << j.dump(2) << "\n";
  return solution.status == vaxprice::SolveStatus::Infeasible ? kExitInfeasible
                                                              : kExitOk;
}

int cmd_sweep(bool default_grid, const std::optional<std::string>& grid_path,
              const std::optional<std::string>& data, const std::string& out,
              const std::optional<std::string>& summary_path,
              const std::optional<std::string>& fig2_path,
              const std::optional<std::string>& fig3_path, int jobs,
              const std::string& band_pf_text, const std::string& band_mod_text) {
  if (default_grid == grid_path.has_value())
    throw std::invalid_argument("pass exactly one of --default-grid or --grid");
  const vaxprice::PriceBand band_pf = parse_band(band_pf_text, "--band-pf-usd");
  const vaxprice::PriceBand band_mod = parse_band(band_mod_text, "--band-mod-usd");

  const std::vector<vaxprice::ScenarioConfig> grid =
      default_grid ? vaxprice::default_sweep_grid()
                   : vaxprice::load_grid_spec(*grid_path).expand();
  const auto records = records_from(data);
  const auto rows = vaxprice::run_sweep(grid, records, jobs);
  vaxprice::write_sweep_csv(out, rows);

  const vaxprice::SweepSummary summary =
      vaxprice::summarize(rows, band_pf, band_mod);
  const std::string summary_json = vaxprice::summary_to_json(summary);
  if (summary_path) {
    std::ofstream f(*summary_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + *summary_path + "'");
    f << summary_json;
  } else {
    std::cout << summary_json;
  }
  if (fig2_path) {
    std::ofstream f(*fig2_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + *fig2_path + "'");
    f << vaxprice::demand_price_export_csv(rows);
  }
  if (fig3_path) {
    std::ofstream f(*fig3_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + *fig3_path + "'");
    f << vaxprice::cost_price_export_csv(rows);
  }
  return kExitOk;
}

int cmd_report(const std::string& in_path, const std::string& band_pf_text,
               const std::string& band_mod_text) {
  const vaxprice::PriceBand band_pf = parse_band(band_pf_text, "--band-pf-usd");
  const vaxprice::PriceBand band_mod = parse_band(band_mod_text, "--band-mod-usd");
  const auto rows = vaxprice::load_sweep_csv(in_path);
  const auto matches = vaxprice::filter_by_band(rows, band_pf, band_mod);
  if (matches.empty()) {
    std::cout << "no interior scenarios with prices in ["
              << band_pf.lo << ", " << band_pf.hi << "] x ["
              << band_mod.lo << ", " << band_mod.hi << "]\n";
    return kExitOk;
  }

  struct Line {
    const char* label;
    const char* format;
    double (*value)(const vaxprice::SweepResultRow&);
  };
  static const Line kLines[] = {
      {"Total Demand, D (M)", "%11.2f", [](const auto& r) { return r.total_demand; }},
      {"Product Similarity, gamma", "%11.2f", [](const auto& r) { return r.gamma; }},
      {"Pfizer Target Profit (M USD)", "%11.1f", [](const auto& r) { return r.target_profit[0]; }},
      {"Pfizer Production Cost (USD)", "%11.2f", [](const auto& r) { return r.unit_cost[0]; }},
      {"Moderna Target Profit (M USD)", "%11.1f", [](const auto& r) { return r.target_profit[1]; }},
      {"Moderna Production Cost (USD)", "%11.2f", [](const auto& r) { return r.unit_cost[1]; }},
      {"Private Sector Equilibrium Price (USD)", "%11.2f", [](const auto& r) { return r.p_priv; }},
      {"Private Sector Equilibrium Quantity (M)", "%11.1f", [](const auto& r) { return r.q_priv; }},
      {"Pfizer Public Sector Price (USD)", "%11.2f", [](const auto& r) { return r.p_pub[0]; }},
      {"Pfizer Public Sector Quantity (M)", "%11.1f", [](const auto& r) { return r.q_pub[0]; }},
      {"Pfizer Profit Realized (M USD)", "%11.1f", [](const auto& r) { return r.profit[0]; }},
      {"Moderna Public Sector Price (USD)", "%11.2f", [](const auto& r) { return r.p_pub[1]; }},
      {"Moderna Public Sector Quantity (M)", "%11.1f", [](const auto& r) { return r.q_pub[1]; }},
      {"Moderna Profit Realized (M USD)", "%11.1f", [](const auto& r) { return r.profit[1]; }},
  };

  std::printf("%-40s", "Scenario");
  for (const auto& row : matches) std::printf("%11d", row.scenario_id);
  std::printf("\n");
  for (const Line& line : kLines) {
    std::printf("%-40s", line.label);
    for (const auto& row : matches) std::printf(line.format, line.value(row));
    std::printf("\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Duopoly vaccine-market pricing: demand estimation, private-"
               "sector equilibrium, public-sector price negotiation, and "
               "scenario sweeps"};
  app.require_subcommand(1);

  std::optional<std::string> data;
  double gamma = 0.0;
  std::string costs = "0,0";
  double r_pub = 0.57;
  int k = 6;

  auto add_estimation_flags = [&](CLI::App* cmd, bool gamma_required) {
    cmd->add_option("--data", data,
                    "historical price/demand CSV (default: bundled flu data)");
    auto* g = cmd->add_option("--gamma", gamma, "product similarity in (0,1)");
    if (gamma_required) g->required();
    cmd->add_option("--d-usd,--d", costs,
                    "per-manufacturer unit costs, USD per regimen, as D1,D2");
    cmd->add_option("--r-pub", r_pub, "public-sector demand share in (0,1)");
    cmd->add_option("--k", k, "price/quantity magnitude exponent");
  };

  CLI::App* estimate =
      app.add_subcommand("estimate", "Estimate the linear demand curve");
  add_estimation_flags(estimate, true);

  CLI::App* equilibrium = app.add_subcommand(
      "equilibrium", "Private-sector equilibrium price, quantity and surplus bound");
  add_estimation_flags(equilibrium, true);

  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "Solve the public-sector negotiation for one scenario");
  std::string config_path;
  int oracle_n = 0;
  solve_cmd->add_option("--config", config_path, "scenario config JSON")
      ->required();
  solve_cmd->add_option("--data", data,
                        "historical price/demand CSV (default: bundled flu data)");
  solve_cmd->add_option("--oracle-n", oracle_n,
                        "also run the brute-force oracle on an NxN grid");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Run a scenario grid and write results CSV");
  bool default_grid = false;
  std::optional<std::string> grid_path, summary_path, fig2_path, fig3_path;
  std::string out_path = "results.csv";
  int jobs = 0;
  std::string band_pf_text = "34:44";
  std::string band_mod_text = "45:55";
  sweep_cmd->add_flag("--default-grid", default_grid,
                      "use the built-in 1,296-scenario grid");
  sweep_cmd->add_option("--grid", grid_path, "grid spec JSON");
  sweep_cmd->add_option("--data", data,
                        "historical price/demand CSV (default: bundled flu data)");
  sweep_cmd->add_option("--out", out_path, "results CSV path");
  sweep_cmd->add_option("--summary", summary_path,
                        "write summary JSON here instead of stdout");
  sweep_cmd->add_option("--fig2-out", fig2_path,
                        "interior price-vs-demand CSV export");
  sweep_cmd->add_option("--fig3-out", fig3_path,
                        "interior price-by-cost CSV export");
  sweep_cmd->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  sweep_cmd->add_option("--band-pf-usd,--band-pf", band_pf_text,
                        "Pfizer price band LO:HI for the summary");
  sweep_cmd->add_option("--band-mod-usd,--band-mod", band_mod_text,
                        "Moderna price band LO:HI for the summary");

  CLI::App* report_cmd = app.add_subcommand(
      "report", "Tabulate interior scenarios whose prices fall in the bands");
  std::string in_path;
  report_cmd->add_option("--in", in_path, "sweep results CSV")->required();
  report_cmd->add_option("--band-pf-usd,--band-pf", band_pf_text,
                         "Pfizer price band LO:HI");
  report_cmd->add_option("--band-mod-usd,--band-mod", band_mod_text,
                         "Moderna price band LO:HI");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (app.got_subcommand(estimate))
      return cmd_estimate(data, gamma, costs, r_pub, k);
    if (app.got_subcommand(equilibrium))
      return cmd_equilibrium(data, gamma, costs, r_pub, k);
    if (app.got_subcommand(solve_cmd))
      return cmd_solve(config_path, data, oracle_n);
    if (app.got_subcommand(sweep_cmd))
      return cmd_sweep(default_grid, grid_path, data, out_path, summary_path,
                       fig2_path, fig3_path, jobs, band_pf_text, band_mod_text);
    if (app.got_subcommand(report_cmd))
      return cmd_report(in_path, band_pf_text, band_mod_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
