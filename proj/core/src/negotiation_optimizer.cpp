#include "vaxprice/negotiation_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace vaxprice {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

}  // namespace

ReducedProblem::ReducedProblem(const DemandCurve& curve,
                               const PrivateEquilibrium& equilibrium,
                               const ScenarioConfig& scenario)
    : curve_(curve), equilibrium_(equilibrium), scenario_(scenario) {
  curve_.validate();
  scenario_.validate();
  if (!(std::isfinite(equilibrium_.p_priv) && equilibrium_.p_priv > 0.0) ||
      !(std::isfinite(equilibrium_.q_priv) && equilibrium_.q_priv > 0.0) ||
      !(std::isfinite(equilibrium_.surplus_bound) &&
        equilibrium_.surplus_bound >= 0.0))
    throw std::invalid_argument("invalid private equilibrium");
  if (!(curve_.a_pub > 0.0))
    throw std::domain_error("price box degenerates: a_pub must be positive");
  p_max_ = 2.0 * curve_.a_pub / (curve_.b - curve_.c);
  if (!std::isfinite(p_max_) || p_max_ <= 0.0)
    throw std::domain_error("price box degenerates: invalid demand slopes");
  demand_floor_ = scenario_.pub_share * scenario_.total_demand;
  for (int i = 0; i < kNumManufacturers; ++i)
    private_profit_[i] = equilibrium_.q_priv *
                         (equilibrium_.p_priv - scenario_.params[i].unit_cost);
}

PointEvaluation evaluate_point(const ReducedProblem& pr,
                               std::array<double, 2> p) {
  const double a = pr.a_pub();
  const double b = pr.b();
  const double c = pr.c();
  const double mu = pr.mu();

  PointEvaluation ev;
  ev.q_pub[0] = a - b * p[0] + c * p[1];
  ev.q_pub[1] = a - b * p[1] + c * p[0];
  ev.z = std::abs(p[0] - p[1]);
  ev.objective =
      mu * (ev.q_pub[0] * p[0] + ev.q_pub[1] * p[1]) + (1.0 - mu) * ev.z;

  double violation = 0.0;
  violation = std::max(
      violation, pr.public_demand_floor() - (ev.q_pub[0] + ev.q_pub[1]));
  for (int i = 0; i < kNumManufacturers; ++i) {
    ev.profit[i] = pr.private_margin_profit(i) +
                   ev.q_pub[i] * (p[i] - pr.unit_cost(i));
    violation = std::max(violation, pr.target_profit(i) - ev.profit[i]);
    violation = std::max(violation, ev.q_pub[i] + pr.q_priv() - pr.capacity(i));
    violation = std::max(
        violation, pr.surplus_bound() - (pr.capacity(i) - ev.q_pub[i]));
    violation = std::max(violation, -ev.q_pub[i]);
    violation = std::max(violation, -p[i]);
  }
  ev.max_violation = violation;
  return ev;
}

namespace {

// One square search cell [x, x+w] x [y, y+w].
struct Cell {
  double x, y, w;
};

// Lower bound on the worst constraint violation anywhere in the cell.
// Affine constraints are bounded exactly at the relevant corner; the
// bilinear profit terms use interval products. Because min-of-max dominates
// max-of-min, a positive bound certifies the whole cell infeasible.
double violation_lower_bound(const ReducedProblem& pr, double l1, double u1,
                             double l2, double u2) {
  const double a = pr.a_pub();
  const double b = pr.b();
  const double c = pr.c();
  const double q1min = a - b * u1 + c * l2;
  const double q1max = a - b * l1 + c * u2;
  const double q2min = a - b * u2 + c * l1;
  const double q2max = a - b * l2 + c * u1;

  const double qsum_max = 2.0 * a - (b - c) * (l1 + l2);
  double bound = pr.public_demand_floor() - qsum_max;

  auto product_max = [](double qlo, double qhi, double mlo, double mhi) {
    return std::max(std::max(qlo * mlo, qlo * mhi),
                    std::max(qhi * mlo, qhi * mhi));
  };
  const double d1 = pr.unit_cost(0);
  const double d2 = pr.unit_cost(1);
  bound = std::max(bound, pr.target_profit(0) - pr.private_margin_profit(0) -
                              product_max(q1min, q1max, l1 - d1, u1 - d1));
  bound = std::max(bound, pr.target_profit(1) - pr.private_margin_profit(1) -
                              product_max(q2min, q2max, l2 - d2, u2 - d2));
  bound = std::max(bound, q1min + pr.q_priv() - pr.capacity(0));
  bound = std::max(bound, q2min + pr.q_priv() - pr.capacity(1));
  bound = std::max(bound, pr.surplus_bound() - (pr.capacity(0) - q1min));
  bound = std::max(bound, pr.surplus_bound() - (pr.capacity(1) - q2min));
  bound = std::max(bound, -q1max);
  bound = std::max(bound, -q2max);
  return std::max(bound, 0.0);
}

// f(center) minus the objective's per-axis Lipschitz constants on the cell
// times the half-widths. The quadratic part's partials are affine, so their
// magnitude is bounded at the cell corners; the price-gap term adds 1-mu.
double objective_lower_bound(const ReducedProblem& pr, double f_center,
                             double l1, double u1, double l2, double u2) {
  const double a = pr.a_pub();
  const double b = pr.b();
  const double c = pr.c();
  const double mu = pr.mu();
  const double e1lo = a - 2.0 * b * u1 + 2.0 * c * l2;
  const double e1hi = a - 2.0 * b * l1 + 2.0 * c * u2;
  const double e2lo = a - 2.0 * b * u2 + 2.0 * c * l1;
  const double e2hi = a - 2.0 * b * l2 + 2.0 * c * u1;
  const double g1 = mu * std::max(std::abs(e1lo), std::abs(e1hi)) + (1.0 - mu);
  const double g2 = mu * std::max(std::abs(e2lo), std::abs(e2hi)) + (1.0 - mu);
  return f_center - g1 * 0.5 * (u1 - l1) - g2 * 0.5 * (u2 - l2);
}

// Best point seen, with the deterministic tie-breaking order:
// objective, then price gap z, then first price.
struct Incumbent {
  double objective = kInf;
  double z = kInf;
  double p1 = kInf;
  double p2 = kInf;

  bool valid() const { return objective < kInf; }
  bool offer(double obj, double zz, double price1, double price2) {
    if (std::tie(obj, zz, price1) < std::tie(objective, z, p1)) {
      objective = obj;
      z = zz;
      p1 = price1;
      p2 = price2;
      return true;
    }
    return false;
  }
};

struct ViolationIncumbent {
  double violation = kInf;
  double objective = kInf;
  double p1 = 0.0;
  double p2 = 0.0;

  bool offer(double viol, double obj, double price1, double price2) {
    if (std::tie(viol, obj) < std::tie(violation, objective)) {
      violation = viol;
      objective = obj;
      p1 = price1;
      p2 = price2;
      return true;
    }
    return false;
  }
};

enum class PolishMode { MinimizeObjective, MinimizeViolation };

// Local constrained descent: compass/diagonal pattern search with a halving
// step, first-improvement acceptance in a fixed direction order.
std::array<double, 2> pattern_search(const ReducedProblem& pr,
                                     std::array<double, 2> start, double step,
                                     PolishMode mode, double tau) {
  static constexpr std::array<std::array<int, 2>, 8> kDirections = {
      {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  const double p_max = pr.price_cap();
  std::array<double, 2> best = start;
  PointEvaluation best_ev = evaluate_point(pr, best);
  double h = std::max(step, 1e-9);
  int accepted = 0;
  while (h >= 1e-12 && accepted < 20000) {
    bool improved = false;
    for (const auto& dir : kDirections) {
      std::array<double, 2> cand = {clamp(best[0] + dir[0] * h, 0.0, p_max),
                                    clamp(best[1] + dir[1] * h, 0.0, p_max)};
      const PointEvaluation ev = evaluate_point(pr, cand);
      bool better = false;
      if (mode == PolishMode::MinimizeObjective) {
        better = ev.max_violation <= tau &&
                 std::tie(ev.objective, ev.z, cand[0]) <
                     std::tie(best_ev.objective, best_ev.z, best[0]);
      } else {
        better = std::tie(ev.max_violation, ev.objective) <
                 std::tie(best_ev.max_violation, best_ev.objective);
      }
      if (better) {
        best = cand;
        best_ev = ev;
        improved = true;
        ++accepted;
        break;
      }
    }
    if (!improved) h *= 0.5;
  }
  return best;
}

void validate_tolerances(const SolverTolerances& tol) {
  if (!(tol.feasibility > 0.0) || !(tol.price_resolution > 0.0) ||
      !(tol.objective_gap > 0.0) || tol.initial_grid < 2 ||
      tol.max_refinement_rounds < 1 || tol.subdivision_budget < 4)
    throw std::invalid_argument("invalid solver tolerances");
}

}  // namespace

NegotiationSolution solve(const ReducedProblem& pr,
                          const SolverTolerances& tol,
                          OptimalityCertificate* certificate) {
  validate_tolerances(tol);
  const double tau = tol.feasibility;
  const double p_max = pr.price_cap();

  std::vector<Cell> cells;
  const int n0 = tol.initial_grid;
  const double w0 = p_max / n0;
  cells.reserve(static_cast<size_t>(n0) * n0);
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n0; ++j)
      cells.push_back({i * w0, j * w0, w0});

  Incumbent incumbent;
  ViolationIncumbent least_violating;
  double last_polished = kInf;
  double final_gap = 0.0;
  double finest_width = w0;
  int rounds = 0;

  std::vector<double> center_objective;
  std::vector<Cell> next;
  std::vector<size_t> order;

  for (int round = 0; round < tol.max_refinement_rounds; ++round) {
    rounds = round + 1;
    center_objective.resize(cells.size());

    for (size_t i = 0; i < cells.size(); ++i) {
      const Cell& cell = cells[i];
      const std::array<double, 2> p = {cell.x + 0.5 * cell.w,
                                       cell.y + 0.5 * cell.w};
      const PointEvaluation ev = evaluate_point(pr, p);
      center_objective[i] = ev.objective;
      least_violating.offer(ev.max_violation, ev.objective, p[0], p[1]);
      if (ev.max_violation <= tau)
        incumbent.offer(ev.objective, ev.z, p[0], p[1]);
      finest_width = std::min(finest_width, cell.w);
    }

    const double step = std::max(w0 / static_cast<double>(1 << std::min(round, 30)),
                                 tol.price_resolution);
    if (incumbent.valid() && incumbent.objective < last_polished) {
      const auto polished = pattern_search(
          pr, {incumbent.p1, incumbent.p2}, step, PolishMode::MinimizeObjective, tau);
      const PointEvaluation ev = evaluate_point(pr, polished);
      incumbent.offer(ev.objective, ev.z, polished[0], polished[1]);
      last_polished = incumbent.objective;
    } else if (!incumbent.valid() && least_violating.violation < kInf) {
      const auto polished = pattern_search(
          pr, {least_violating.p1, least_violating.p2}, step,
          PolishMode::MinimizeViolation, tau);
      const PointEvaluation ev = evaluate_point(pr, polished);
      least_violating.offer(ev.max_violation, ev.objective, polished[0],
                            polished[1]);
      if (ev.max_violation <= tau) {
        incumbent.offer(ev.objective, ev.z, polished[0], polished[1]);
        const auto refined = pattern_search(
            pr, {incumbent.p1, incumbent.p2}, step,
            PolishMode::MinimizeObjective, tau);
        const PointEvaluation rev = evaluate_point(pr, refined);
        incumbent.offer(rev.objective, rev.z, refined[0], refined[1]);
        last_polished = incumbent.objective;
      }
    }

    // Prune: drop cells that provably contain no tolerated-feasible point
    // and, once an incumbent exists, cells whose objective lower bound
    // cannot beat it. Surviving bounds feed the optimality certificate.
    next.clear();
    double lower_bound = kInf;
    double widest = 0.0;
    for (size_t i = 0; i < cells.size(); ++i) {
      const Cell& cell = cells[i];
      const double l1 = cell.x, u1 = cell.x + cell.w;
      const double l2 = cell.y, u2 = cell.y + cell.w;
      const double viol_lb = violation_lower_bound(pr, l1, u1, l2, u2);
      if (incumbent.valid()) {
        if (viol_lb > tau) continue;
        const double obj_lb =
            objective_lower_bound(pr, center_objective[i], l1, u1, l2, u2);
        if (obj_lb >= incumbent.objective) continue;
        lower_bound = std::min(lower_bound, obj_lb);
      } else {
        if (viol_lb > tau && viol_lb >= least_violating.violation) continue;
      }
      next.push_back(cell);
      widest = std::max(widest, cell.w);
    }

    final_gap = (incumbent.valid() && lower_bound < kInf)
                    ? std::max(0.0, incumbent.objective - lower_bound)
                    : 0.0;
    if (next.empty()) break;
    if (widest <= tol.price_resolution &&
        (!incumbent.valid() || final_gap <= tol.objective_gap))
      break;
    if (round + 1 == tol.max_refinement_rounds) {
      cells = next;
      break;
    }

    // Subdivide, deferring the least promising cells when over budget.
    size_t split_count = next.size();
    if (next.size() > static_cast<size_t>(tol.subdivision_budget)) {
      order.resize(next.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](size_t lhs, size_t rhs) {
        return next[lhs].w > next[rhs].w;  // widest first
      });
      split_count = static_cast<size_t>(tol.subdivision_budget);
      std::vector<Cell> prioritized(next.size());
      for (size_t i = 0; i < order.size(); ++i) prioritized[i] = next[order[i]];
      next.swap(prioritized);
    }
    cells.clear();
    for (size_t i = 0; i < next.size(); ++i) {
      const Cell& cell = next[i];
      if (i < split_count) {
        const double h = 0.5 * cell.w;
        cells.push_back({cell.x, cell.y, h});
        cells.push_back({cell.x + h, cell.y, h});
        cells.push_back({cell.x, cell.y + h, h});
        cells.push_back({cell.x + h, cell.y + h, h});
      } else {
        cells.push_back(cell);
      }
    }
  }

  NegotiationSolution solution;
  if (incumbent.valid()) {
    const std::array<double, 2> p = {incumbent.p1, incumbent.p2};
    const PointEvaluation ev = evaluate_point(pr, p);
    if (ev.max_violation > tau)
      throw std::logic_error("solver returned an infeasible incumbent");
    const bool interior =
        p[0] > kInteriorityThreshold && p[1] > kInteriorityThreshold &&
        ev.q_pub[0] > kInteriorityThreshold && ev.q_pub[1] > kInteriorityThreshold;
    solution.status = interior ? SolveStatus::Interior : SolveStatus::Boundary;
    solution.p_pub = p;
    solution.q_pub = ev.q_pub;
    solution.z = ev.z;
    solution.objective = ev.objective;
    solution.realized_profit = ev.profit;
    solution.max_violation = ev.max_violation;
    solution.certificate_gap = final_gap;
  } else {
    const std::array<double, 2> p = {least_violating.p1, least_violating.p2};
    const PointEvaluation ev = evaluate_point(pr, p);
    solution.status = SolveStatus::Infeasible;
    solution.p_pub = p;
    solution.q_pub = ev.q_pub;
    solution.z = ev.z;
    solution.objective = ev.objective;
    solution.realized_profit = ev.profit;
    solution.max_violation = ev.max_violation;
    solution.certificate_gap = 0.0;
  }

  if (certificate) {
    certificate->grid_resolution = finest_width;
    certificate->incumbent_objective = solution.objective;
    certificate->lower_bound_gap = solution.certificate_gap;
    certificate->refinement_rounds = rounds;
  }
  return solution;
}

OracleResult oracle_solve(const ReducedProblem& pr, int grid_points,
                          double feasibility_tolerance) {
  if (grid_points < 2)
    throw std::invalid_argument("oracle grid needs at least 2 points per axis");
  const double p_max = pr.price_cap();
  const double scale = p_max / (grid_points - 1);

  bool found = false;
  double best_obj = kInf, best_z = kInf;
  std::array<double, 2> best_p{};
  double min_violation = kInf;
  std::array<double, 2> min_violation_p{};

  for (int i = 0; i < grid_points; ++i) {
    const double p1 = i * scale;
    for (int j = 0; j < grid_points; ++j) {
      const std::array<double, 2> p = {p1, j * scale};
      const PointEvaluation ev = evaluate_point(pr, p);
      if (ev.max_violation < min_violation) {
        min_violation = ev.max_violation;
        min_violation_p = p;
      }
      if (ev.max_violation <= feasibility_tolerance &&
          std::tie(ev.objective, ev.z, p[0]) < std::tie(best_obj, best_z, best_p[0])) {
        found = true;
        best_obj = ev.objective;
        best_z = ev.z;
        best_p = p;
      }
    }
  }

  OracleResult result;
  result.feasible = found;
  result.p_pub = found ? best_p : min_violation_p;
  const PointEvaluation ev = evaluate_point(pr, result.p_pub);
  result.q_pub = ev.q_pub;
  result.objective = ev.objective;
  result.min_violation = found ? ev.max_violation : min_violation;
  return result;
}

}  // namespace vaxprice
