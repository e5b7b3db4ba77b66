#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

// Internal unit conventions, used consistently across the library:
//   quantities            millions of two-dose regimens
//   prices and unit costs USD per two-dose regimen
//   profits, expenditures millions of USD
// The weighted objective mixes expenditure (millions of USD) with the
// price gap (USD); keeping quantities in millions is what makes the
// default objective weight meaningful.

namespace vaxprice {

inline constexpr int kNumManufacturers = 2;

/// A public price or quantity at or below this value counts as zero when
/// classifying a solution as interior vs boundary ($0.001 / 1,000 regimens).
inline constexpr double kInteriorityThreshold = 1e-3;

struct Manufacturer {
  int id = 0;  // 1 or 2
  std::string label;
};

/// Per-manufacturer production parameters.
struct ManufacturerParams {
  double capacity = 0.0;       // K, millions of regimens
  double target_profit = 0.0;  // P, millions of USD
  double unit_cost = 0.0;      // d, USD per regimen
};

/// One complete parameterization of the market model.
struct ScenarioConfig {
  int scenario_id = 0;
  double total_demand = 0.0;      // D, millions of regimens
  double gamma = 0.0;             // product similarity, in (0,1)
  int magnitude_exponent = 6;     // k
  double pub_share = 0.57;        // r_pub, in (0,1)
  double objective_weight = 0.9;  // mu, in [0,1]
  std::array<ManufacturerParams, 2> params{};
  std::array<Manufacturer, 2> manufacturers{Manufacturer{1, "Pfizer"},
                                            Manufacturer{2, "Moderna"}};

  double priv_share() const { return 1.0 - pub_share; }

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

/// Estimated linear demand curve coefficients (both sectors).
struct DemandCurve {
  double a_pub = 0.0;   // millions of persons at zero price, public sector
  double a_priv = 0.0;  // same, private sector
  double b = 0.0;       // own-price slope, millions of persons per USD
  double c = 0.0;       // cross-price slope, millions of persons per USD

  void validate() const;
};

/// Symmetric private-sector equilibrium, exogenous to the negotiation.
struct PrivateEquilibrium {
  double p_priv = 0.0;         // USD per regimen, shared by both manufacturers
  double q_priv = 0.0;         // millions of regimens per manufacturer
  double surplus_bound = 0.0;  // U, millions of regimens
};

enum class SolveStatus { Interior, Boundary, Infeasible, Error };

std::string to_string(SolveStatus status);
SolveStatus status_from_string(const std::string& text);

/// Outcome of the public-sector price negotiation for one scenario.
///
/// For a non-infeasible status the quantities are always the affine image of
/// the prices under the public demand curve and z is exactly |p1 - p2|.
/// For an infeasible scenario the fields describe the least-violating point
/// found, and max_violation is that point's worst constraint violation.
struct NegotiationSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::array<double, 2> p_pub{};           // USD per regimen
  std::array<double, 2> q_pub{};           // millions of regimens
  double z = 0.0;                          // |p_pub[0] - p_pub[1]|, USD
  double objective = 0.0;                  // scaled objective units
  std::array<double, 2> realized_profit{}; // millions of USD
  double max_violation = 0.0;
  double certificate_gap = 0.0;            // bound on distance to global optimum
};

/// Closed price interval in USD.
struct PriceBand {
  double lo = 0.0;
  double hi = 0.0;
};

struct SweepSummary {
  int n_total = 0;  // rows that solved (errors excluded)
  int n_infeasible = 0;
  int n_boundary = 0;
  int n_interior = 0;
  int n_error = 0;
  std::optional<std::array<double, 2>> centroid;  // mean interior prices, USD
  std::vector<int> band_matches;                  // interior rows inside the bands
  PriceBand band_1{34.0, 44.0};
  PriceBand band_2{45.0, 55.0};
};

/// Factor lists whose Cartesian product defines a sweep. Expansion order is
/// lexicographic in the member order below (total_demand slowest, second
/// manufacturer's unit cost fastest); ids are assigned 1..N in that order.
struct SweepGridSpec {
  std::vector<double> total_demand;
  std::vector<double> gamma;
  std::array<std::vector<double>, 2> target_profit;
  std::array<std::vector<double>, 2> unit_cost;
  std::array<double, 2> capacity{250.0, 200.0};
  int magnitude_exponent = 6;
  double pub_share = 0.57;
  double objective_weight = 0.9;
  std::array<std::string, 2> labels{"Pfizer", "Moderna"};

  static SweepGridSpec defaults();
  std::vector<ScenarioConfig> expand() const;
};

/// The 1,296-scenario default grid (three demand levels, three similarity
/// levels, three target profits per manufacturer, four unit costs each).
std::vector<ScenarioConfig> default_sweep_grid();

// JSON scenario configuration. Normative field names:
//   total_demand_millions, gamma, k, r_pub, mu,
//   manufacturers: [{label, capacity_millions, target_profit_millions,
//                    unit_cost_usd}, ...]
ScenarioConfig scenario_from_json(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& config);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Grid spec as JSON: factor-list arrays total_demand_millions, gamma,
/// target_profit_m1_millions, target_profit_m2_millions, unit_cost_m1_usd,
/// unit_cost_m2_usd plus scalar overrides (k, r_pub, mu, capacity_m1_millions,
/// capacity_m2_millions, labels). Every key is optional; {} is the default grid.
SweepGridSpec grid_spec_from_json(const std::string& text);
SweepGridSpec load_grid_spec(const std::filesystem::path& path);

}  // namespace vaxprice
