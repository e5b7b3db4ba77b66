#pragma once

#include <array>

#include "vaxprice/market_model.hpp"

namespace vaxprice {

struct SolverTolerances {
  double feasibility = 1e-6;       // tau: largest tolerated constraint violation
  double price_resolution = 1e-4;  // delta_p: target cell width, USD
  double objective_gap = 1e-3;     // eps_obj: certified optimality gap
  int initial_grid = 64;           // cells per axis at the coarsest level
  int max_refinement_rounds = 48;
  int subdivision_budget = 262144; // cells subdivided per round; the rest wait
};

struct OptimalityCertificate {
  double grid_resolution = 0.0;     // width of the finest cells examined, USD
  double incumbent_objective = 0.0;
  double lower_bound_gap = 0.0;     // incumbent minus certified lower bound
  int refinement_rounds = 0;
};

/// The negotiation program reduced to the two public prices: the public
/// quantities are affine in the prices, so the search space is the square
/// [0, p_max]^2 with p_max = 2*a_pub/(b-c), the largest price sum at which
/// the two public quantities can both stay nonnegative.
class ReducedProblem {
 public:
  /// Validates all inputs; throws if the curve admits no box (a_pub <= 0),
  /// any parameter is non-finite, or the scenario is invalid.
  ReducedProblem(const DemandCurve& curve, const PrivateEquilibrium& equilibrium,
                 const ScenarioConfig& scenario);

  const DemandCurve& curve() const { return curve_; }
  const PrivateEquilibrium& equilibrium() const { return equilibrium_; }
  const ScenarioConfig& scenario() const { return scenario_; }
  double price_cap() const { return p_max_; }

  // Precomputed coefficients, used heavily by the evaluators.
  double a_pub() const { return curve_.a_pub; }
  double b() const { return curve_.b; }
  double c() const { return curve_.c; }
  double mu() const { return scenario_.objective_weight; }
  double public_demand_floor() const { return demand_floor_; }
  double private_margin_profit(int i) const { return private_profit_[i]; }
  double unit_cost(int i) const { return scenario_.params[i].unit_cost; }
  double capacity(int i) const { return scenario_.params[i].capacity; }
  double target_profit(int i) const { return scenario_.params[i].target_profit; }
  double surplus_bound() const { return equilibrium_.surplus_bound; }
  double q_priv() const { return equilibrium_.q_priv; }

 private:
  DemandCurve curve_;
  PrivateEquilibrium equilibrium_;
  ScenarioConfig scenario_;
  double p_max_ = 0.0;
  double demand_floor_ = 0.0;               // r_pub * D
  std::array<double, 2> private_profit_{};  // q_priv * (p_priv - d_i)
};

struct PointEvaluation {
  std::array<double, 2> q_pub{};
  double z = 0.0;
  double objective = 0.0;
  std::array<double, 2> profit{};
  double max_violation = 0.0;
};

/// Objective, derived quantities, realized profits and the worst constraint
/// violation at one price pair. Violations are measured in each constraint's
/// own scaled units (millions of regimens for demand/capacity/surplus,
/// millions of USD for profits, USD for price nonnegativity).
PointEvaluation evaluate_point(const ReducedProblem& problem,
                               std::array<double, 2> prices);

/// Certified global minimization over the price box.
///
/// Multi-resolution grid search: the box is covered by square cells that are
/// repeatedly split in four. A cell survives a round only if it could still
/// contain a feasible point (per-constraint interval bounds) and its
/// objective lower bound, from the objective's Lipschitz constant on the
/// cell, beats the incumbent. Incumbents are tightened by a local
/// pattern-search polish. Refinement continues until the surviving cells are
/// narrower than price_resolution and the incumbent is within objective_gap
/// of the certified lower bound. When no feasible point exists the same
/// machinery minimizes the worst violation instead and the result carries
/// the least-violating point as a diagnosis.
///
/// Equal-objective ties are broken toward smaller price gap z, then smaller
/// first-manufacturer price. The search is fully deterministic.
NegotiationSolution solve(const ReducedProblem& problem,
                          const SolverTolerances& tolerances = {},
                          OptimalityCertificate* certificate = nullptr);

struct OracleResult {
  bool feasible = false;
  std::array<double, 2> p_pub{};
  std::array<double, 2> q_pub{};
  double objective = 0.0;
  double min_violation = 0.0;
};

/// Brute-force reference: evaluates every point of the inclusive n-by-n
/// uniform grid over the price box and returns the best feasible one (same
/// tie-breaking as solve). Shares no search logic with solve.
OracleResult oracle_solve(const ReducedProblem& problem, int grid_points,
                          double feasibility_tolerance = 1e-6);

}  // namespace vaxprice
