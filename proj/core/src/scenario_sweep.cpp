#include "vaxprice/scenario_sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "vaxprice/bec_equilibrium.hpp"

namespace vaxprice {

namespace {

constexpr const char* kSweepHeader =
    "scenario_id,D,gamma,P_pf,P_mod,d_pf,d_mod,status,p_pub_pf,p_pub_mod,"
    "q_pub_pf,q_pub_mod,p_priv,q_priv,profit_pf,profit_mod,objective";

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  std::array<char, 32> buffer;
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) throw std::logic_error("double formatting failed");
  return std::string(buffer.data(), ptr);
}

double parse_double(const std::string& field, const std::string& source,
                    int row, int column) {
  if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw std::invalid_argument(source + ": row " + std::to_string(row) +
                                ", column " + std::to_string(column) +
                                ": '" + field + "' is not a number");
  return value;
}

SweepResultRow solve_one(const ScenarioConfig& config,
                         std::span<const HistoricalRecord> records,
                         const SolverTolerances& tolerances) {
  SweepResultRow row;
  row.scenario_id = config.scenario_id;
  row.total_demand = config.total_demand;
  row.gamma = config.gamma;
  row.target_profit = {config.params[0].target_profit,
                       config.params[1].target_profit};
  row.unit_cost = {config.params[0].unit_cost, config.params[1].unit_cost};
  try {
    const ReducedProblem problem = build_problem(records, config);
    const NegotiationSolution solution = solve(problem, tolerances);
    row.status = solution.status;
    row.p_pub = solution.p_pub;
    row.q_pub = solution.q_pub;
    row.p_priv = problem.equilibrium().p_priv;
    row.q_priv = problem.equilibrium().q_priv;
    row.profit = solution.realized_profit;
    row.objective = solution.objective;
  } catch (const std::exception&) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    row.status = SolveStatus::Error;
    row.p_pub = {nan, nan};
    row.q_pub = {nan, nan};
    row.p_priv = nan;
    row.q_priv = nan;
    row.profit = {nan, nan};
    row.objective = nan;
  }
  return row;
}

}  // namespace

ReducedProblem build_problem(std::span<const HistoricalRecord> records,
                             const ScenarioConfig& config) {
  config.validate();
  const DemandCurve curve = estimate_demand_curve(
      records, config.gamma, config.magnitude_exponent, config.pub_share,
      {config.params[0].unit_cost, config.params[1].unit_cost});
  const PrivateEquilibrium equilibrium = private_equilibrium(curve, config.gamma);
  return ReducedProblem(curve, equilibrium, config);
}

std::vector<SweepResultRow> run_sweep(std::span<const ScenarioConfig> grid,
                                      std::span<const HistoricalRecord> records,
                                      int jobs,
                                      const SolverTolerances& tolerances) {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  if (records.empty()) throw std::invalid_argument("historical data is empty");
  if (jobs < 0) throw std::invalid_argument("jobs must be >= 0");

  unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                              : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, grid.size());

  std::vector<SweepResultRow> rows(grid.size());
  std::atomic<size_t> cursor{0};
  auto work = [&] {
    for (;;) {
      const size_t index = cursor.fetch_add(1);
      if (index >= grid.size()) return;
      rows[index] = solve_one(grid[index], records, tolerances);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepResultRow& lhs, const SweepResultRow& rhs) {
                     return lhs.scenario_id < rhs.scenario_id;
                   });
  return rows;
}

SweepSummary summarize(std::span<const SweepResultRow> rows, PriceBand band_1,
                       PriceBand band_2) {
  if (rows.empty()) throw std::invalid_argument("no sweep rows to summarize");
  SweepSummary summary;
  summary.band_1 = band_1;
  summary.band_2 = band_2;
  double sum1 = 0.0, sum2 = 0.0;
  for (const SweepResultRow& row : rows) {
    switch (row.status) {
      case SolveStatus::Interior:
        ++summary.n_interior;
        sum1 += row.p_pub[0];
        sum2 += row.p_pub[1];
        if (row.p_pub[0] >= band_1.lo && row.p_pub[0] <= band_1.hi &&
            row.p_pub[1] >= band_2.lo && row.p_pub[1] <= band_2.hi)
          summary.band_matches.push_back(row.scenario_id);
        break;
      case SolveStatus::Boundary: ++summary.n_boundary; break;
      case SolveStatus::Infeasible: ++summary.n_infeasible; break;
      case SolveStatus::Error: ++summary.n_error; break;
    }
  }
  summary.n_total =
      summary.n_interior + summary.n_boundary + summary.n_infeasible;
  if (summary.n_interior > 0)
    summary.centroid = std::array<double, 2>{sum1 / summary.n_interior,
                                             sum2 / summary.n_interior};
  std::sort(summary.band_matches.begin(), summary.band_matches.end());
  return summary;
}

std::vector<SweepResultRow> filter_by_band(std::span<const SweepResultRow> rows,
                                           PriceBand band_1, PriceBand band_2) {
  if (!(band_1.lo < band_1.hi) || !(band_2.lo < band_2.hi))
    throw std::invalid_argument("price bands must be non-degenerate");
  std::vector<SweepResultRow> matches;
  for (const SweepResultRow& row : rows) {
    if (row.status != SolveStatus::Interior) continue;
    if (row.p_pub[0] >= band_1.lo && row.p_pub[0] <= band_1.hi &&
        row.p_pub[1] >= band_2.lo && row.p_pub[1] <= band_2.hi)
      matches.push_back(row);
  }
  std::stable_sort(matches.begin(), matches.end(),
                   [](const SweepResultRow& lhs, const SweepResultRow& rhs) {
                     return lhs.scenario_id < rhs.scenario_id;
                   });
  return matches;
}

std::string sweep_to_csv(std::span<const SweepResultRow> rows) {
  std::string out(kSweepHeader);
  out.push_back('\n');
  for (const SweepResultRow& row : rows) {
    out += std::to_string(row.scenario_id);
    for (double v : {row.total_demand, row.gamma, row.target_profit[0],
                     row.target_profit[1], row.unit_cost[0], row.unit_cost[1]}) {
      out.push_back(',');
      out += format_double(v);
    }
    out.push_back(',');
    out += to_string(row.status);
    for (double v : {row.p_pub[0], row.p_pub[1], row.q_pub[0], row.q_pub[1],
                     row.p_priv, row.q_priv, row.profit[0], row.profit[1],
                     row.objective}) {
      out.push_back(',');
      out += format_double(v);
    }
    out.push_back('\n');
  }
  return out;
}

void write_sweep_csv(const std::filesystem::path& path,
                     std::span<const SweepResultRow> rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open output file '" + path.string() + "'");
  out << sweep_to_csv(rows);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::vector<SweepResultRow> load_sweep_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open sweep results '" + path.string() + "'");
  const std::string source = path.string();
  std::string line;
  bool saw_header = false;
  int row_number = 0;
  std::vector<SweepResultRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kSweepHeader)
        throw std::invalid_argument(source + ": unexpected header");
      saw_header = true;
      continue;
    }
    ++row_number;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 17)
      throw std::invalid_argument(source + ": row " + std::to_string(row_number) +
                                  ": expected 17 columns, got " +
                                  std::to_string(fields.size()));
    SweepResultRow row;
    size_t col = 0;
    auto next_double = [&] {
      const std::string& field = fields[col];
      ++col;
      return parse_double(field, source, row_number, static_cast<int>(col));
    };
    row.scenario_id = static_cast<int>(next_double());
    row.total_demand = next_double();
    row.gamma = next_double();
    row.target_profit[0] = next_double();
    row.target_profit[1] = next_double();
    row.unit_cost[0] = next_double();
    row.unit_cost[1] = next_double();
    row.status = status_from_string(fields[col++]);
    row.p_pub[0] = next_double();
    row.p_pub[1] = next_double();
    row.q_pub[0] = next_double();
    row.q_pub[1] = next_double();
    row.p_priv = next_double();
    row.q_priv = next_double();
    row.profit[0] = next_double();
    row.profit[1] = next_double();
    row.objective = next_double();
    rows.push_back(row);
  }
  if (!saw_header)
    throw std::invalid_argument(source + ": empty file");
  if (rows.empty())
    throw std::invalid_argument(source + ": no data rows");
  return rows;
}

std::string summary_to_json(const SweepSummary& summary) {
  nlohmann::ordered_json j;
  j["n_total"] = summary.n_total;
  j["n_infeasible"] = summary.n_infeasible;
  j["n_boundary"] = summary.n_boundary;
  j["n_interior"] = summary.n_interior;
  j["n_error"] = summary.n_error;
  if (summary.centroid) {
    j["centroid"] = {{"p_pub_pf", (*summary.centroid)[0]},
                     {"p_pub_mod", (*summary.centroid)[1]}};
  } else {
    j["centroid"] = nullptr;
  }
  j["band_pf"] = {summary.band_1.lo, summary.band_1.hi};
  j["band_mod"] = {summary.band_2.lo, summary.band_2.hi};
  j["band_matches"] = summary.band_matches;
  return j.dump(2) + "\n";
}

std::string demand_price_export_csv(std::span<const SweepResultRow> rows) {
  std::string out = "p_pub_pf,p_pub_mod,D\n";
  for (const SweepResultRow& row : rows) {
    if (row.status != SolveStatus::Interior) continue;
    out += format_double(row.p_pub[0]);
    out.push_back(',');
    out += format_double(row.p_pub[1]);
    out.push_back(',');
    out += format_double(row.total_demand);
    out.push_back('\n');
  }
  return out;
}

std::string cost_price_export_csv(std::span<const SweepResultRow> rows) {
  std::string out = "manufacturer,d,p_pub\n";
  for (int m = 0; m < kNumManufacturers; ++m) {
    const char* name = m == 0 ? "pf" : "mod";
    for (const SweepResultRow& row : rows) {
      if (row.status != SolveStatus::Interior) continue;
      out += name;
      out.push_back(',');
      out += format_double(row.unit_cost[m]);
      out.push_back(',');
      out += format_double(row.p_pub[m]);
      out.push_back('\n');
    }
  }
  return out;
}

}  // namespace vaxprice
