#include <doctest.h>

#include <algorithm>
#include <set>

#include "vaxprice/market_model.hpp"

using namespace vaxprice;

TEST_CASE("default sweep grid has the full Cartesian product") {
  const auto grid = default_sweep_grid();
  CHECK(grid.size() == 1296);
  CHECK(grid.size() == 3 * 3 * 3 * 3 * 4 * 4);
}

TEST_CASE("default grid ids are a stable bijection onto 1..1296") {
  const auto grid = default_sweep_grid();
  std::set<int> ids;
  for (const auto& config : grid) ids.insert(config.scenario_id);
  CHECK(ids.size() == grid.size());
  CHECK(*ids.begin() == 1);
  CHECK(*ids.rbegin() == 1296);

  const auto again = default_sweep_grid();
  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid[i].scenario_id == again[i].scenario_id);
    CHECK(grid[i].total_demand == again[i].total_demand);
    CHECK(grid[i].params[0].unit_cost == again[i].params[0].unit_cost);
  }
}

TEST_CASE("default grid enumerates lexicographically") {
  const auto grid = default_sweep_grid();
  const auto& first = grid.front();
  CHECK(first.scenario_id == 1);
  CHECK(first.total_demand == 157.05);
  CHECK(first.gamma == 0.25);
  CHECK(first.params[0].target_profit == 25.7);
  CHECK(first.params[1].target_profit == 41.4);
  CHECK(first.params[0].unit_cost == 0.0);
  CHECK(first.params[1].unit_cost == 0.0);

  // second config differs only in the fastest factor
  CHECK(grid[1].params[1].unit_cost == 6.60);
  CHECK(grid[1].params[0].unit_cost == 0.0);
  CHECK(grid[1].total_demand == 157.05);

  const auto& last = grid.back();
  CHECK(last.total_demand == 191.95);
  CHECK(last.gamma == 0.75);
  CHECK(last.params[0].target_profit == 2570.0);
  CHECK(last.params[1].target_profit == 2570.0);
  CHECK(last.params[0].unit_cost == 31.96);
  CHECK(last.params[1].unit_cost == 31.96);
}

TEST_CASE("default grid configs share the fixed parameters and validate") {
  for (const auto& config : default_sweep_grid()) {
    CHECK_NOTHROW(config.validate());
    CHECK(config.params[0].capacity == 250.0);
    CHECK(config.params[1].capacity == 200.0);
    CHECK(config.pub_share == 0.57);
    CHECK(config.objective_weight == 0.9);
    CHECK(config.magnitude_exponent == 6);
    CHECK(config.manufacturers[0].label == "Pfizer");
    CHECK(config.manufacturers[1].label == "Moderna");
  }
}

TEST_CASE("scenario validation rejects out-of-range parameters") {
  auto valid = [] {
    ScenarioConfig c;
    c.total_demand = 174.5;
    c.gamma = 0.5;
    c.params[0] = {250.0, 234.0, 31.96};
    c.params[1] = {200.0, 41.4, 31.96};
    return c;
  };
  CHECK_NOTHROW(valid().validate());

  auto c = valid();
  c.gamma = 1.0;
  CHECK_THROWS_WITH_AS(c.validate(), "gamma must lie in (0,1)",
                       std::invalid_argument);
  c = valid();
  c.gamma = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = valid();
  c.total_demand = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = valid();
  c.pub_share = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = valid();
  c.objective_weight = 1.5;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = valid();
  c.params[0].capacity = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = valid();
  c.params[1].target_profit = -5.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = valid();
  c.params[1].unit_cost = -0.1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("demand curve validation") {
  DemandCurve curve{76.7, 69.5, 2.0, 1.0};
  CHECK_NOTHROW(curve.validate());
  curve.c = 2.5;  // violates b > c
  CHECK_THROWS_AS(curve.validate(), std::invalid_argument);
  curve = {76.7, 69.5, 2.0, 0.0};
  CHECK_THROWS_AS(curve.validate(), std::invalid_argument);
  curve = {-1.0, 69.5, 2.0, 1.0};
  CHECK_THROWS_AS(curve.validate(), std::invalid_argument);
}

TEST_CASE("scenario JSON round-trips") {
  ScenarioConfig config;
  config.scenario_id = 352;
  config.total_demand = 157.05;
  config.gamma = 0.75;
  config.params[0] = {250.0, 234.0, 31.96};
  config.params[1] = {200.0, 41.4, 31.96};

  const auto parsed = scenario_from_json(scenario_to_json(config));
  CHECK(parsed.scenario_id == config.scenario_id);
  CHECK(parsed.total_demand == config.total_demand);
  CHECK(parsed.gamma == config.gamma);
  CHECK(parsed.magnitude_exponent == config.magnitude_exponent);
  CHECK(parsed.pub_share == config.pub_share);
  CHECK(parsed.objective_weight == config.objective_weight);
  for (int i = 0; i < 2; ++i) {
    CHECK(parsed.params[i].capacity == config.params[i].capacity);
    CHECK(parsed.params[i].target_profit == config.params[i].target_profit);
    CHECK(parsed.params[i].unit_cost == config.params[i].unit_cost);
    CHECK(parsed.manufacturers[i].label == config.manufacturers[i].label);
  }
}

TEST_CASE("scenario JSON errors") {
  CHECK_THROWS_AS(scenario_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(scenario_from_json("[1,2]"), std::invalid_argument);
  // missing field
  CHECK_THROWS_WITH_AS(
      scenario_from_json(R"({"gamma":0.5,"k":6,"r_pub":0.57,"mu":0.9,
        "manufacturers":[{"capacity_millions":250,"target_profit_millions":1,
        "unit_cost_usd":0},{"capacity_millions":200,
        "target_profit_millions":1,"unit_cost_usd":0}]})"),
      "missing field 'total_demand_millions'", std::invalid_argument);
  // invariant violation caught after parse
  CHECK_THROWS_AS(
      scenario_from_json(R"({"total_demand_millions":174.5,"gamma":1.2,"k":6,
        "r_pub":0.57,"mu":0.9,
        "manufacturers":[{"capacity_millions":250,"target_profit_millions":1,
        "unit_cost_usd":0},{"capacity_millions":200,
        "target_profit_millions":1,"unit_cost_usd":0}]})"),
      std::invalid_argument);
  // wrong manufacturer count
  CHECK_THROWS_AS(
      scenario_from_json(R"({"total_demand_millions":174.5,"gamma":0.5,"k":6,
        "r_pub":0.57,"mu":0.9,"manufacturers":[]})"),
      std::invalid_argument);
}

TEST_CASE("grid spec JSON defaults and overrides") {
  const auto default_spec = grid_spec_from_json("{}");
  CHECK(default_spec.expand().size() == 1296);

  const auto spec = grid_spec_from_json(R"({
    "total_demand_millions": [174.5],
    "gamma": [0.5, 0.75],
    "target_profit_m1_millions": [234],
    "target_profit_m2_millions": [41.4],
    "unit_cost_m1_usd": [0, 31.96],
    "unit_cost_m2_usd": [31.96],
    "r_pub": 0.5,
    "mu": 1.0,
    "labels": ["A", "B"]
  })");
  const auto grid = spec.expand();
  CHECK(grid.size() == 4);
  CHECK(grid.front().scenario_id == 1);
  CHECK(grid.back().scenario_id == 4);
  CHECK(grid.front().pub_share == 0.5);
  CHECK(grid.front().objective_weight == 1.0);
  CHECK(grid.front().manufacturers[0].label == "A");

  CHECK_THROWS_AS(grid_spec_from_json(R"({"gamma": []})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(grid_spec_from_json(R"({"labels": ["only-one"]})"),
                  std::invalid_argument);
}

TEST_CASE("status strings round-trip") {
  for (SolveStatus s : {SolveStatus::Interior, SolveStatus::Boundary,
                        SolveStatus::Infeasible, SolveStatus::Error})
    CHECK(status_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(status_from_string("bogus"), std::invalid_argument);
}
