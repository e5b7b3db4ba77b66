#include "vaxprice/market_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace vaxprice {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void ScenarioConfig::validate() const {
  require(std::isfinite(total_demand) && total_demand > 0.0,
          "total_demand must be positive");
  require(std::isfinite(gamma) && gamma > 0.0 && gamma < 1.0,
          "gamma must lie in (0,1)");
  require(magnitude_exponent >= 0, "magnitude exponent k must be >= 0");
  require(std::isfinite(pub_share) && pub_share > 0.0 && pub_share < 1.0,
          "r_pub must lie in (0,1)");
  require(std::isfinite(objective_weight) && objective_weight >= 0.0 &&
              objective_weight <= 1.0,
          "mu must lie in [0,1]");
  for (int i = 0; i < kNumManufacturers; ++i) {
    const auto& p = params[i];
    require(std::isfinite(p.capacity) && p.capacity > 0.0,
            "capacity must be positive");
    require(std::isfinite(p.target_profit) && p.target_profit >= 0.0,
            "target profit must be nonnegative");
    require(std::isfinite(p.unit_cost) && p.unit_cost >= 0.0,
            "unit cost must be nonnegative");
  }
  require(manufacturers[0].id == 1 && manufacturers[1].id == 2,
          "manufacturer ids must be 1 and 2");
}

void DemandCurve::validate() const {
  require(std::isfinite(a_pub) && a_pub > 0.0, "a_pub must be positive");
  require(std::isfinite(a_priv) && a_priv > 0.0, "a_priv must be positive");
  require(std::isfinite(b) && std::isfinite(c) && b > c && c > 0.0,
          "demand slopes must satisfy b > c > 0");
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Interior: return "INTERIOR";
    case SolveStatus::Boundary: return "BOUNDARY";
    case SolveStatus::Infeasible: return "INFEASIBLE";
    case SolveStatus::Error: return "ERROR";
  }
  throw std::logic_error("unknown SolveStatus");
}

SolveStatus status_from_string(const std::string& text) {
  if (text == "INTERIOR") return SolveStatus::Interior;
  if (text == "BOUNDARY") return SolveStatus::Boundary;
  if (text == "INFEASIBLE") return SolveStatus::Infeasible;
  if (text == "ERROR") return SolveStatus::Error;
  throw std::invalid_argument("unknown solve status '" + text + "'");
}

SweepGridSpec SweepGridSpec::defaults() {
  SweepGridSpec spec;
  spec.total_demand = {157.05, 174.5, 191.95};
  spec.gamma = {0.25, 0.50, 0.75};
  spec.target_profit[0] = {25.7, 234.0, 2570.0};
  spec.target_profit[1] = {41.4, 496.0, 2570.0};
  spec.unit_cost[0] = {0.0, 6.60, 23.44, 31.96};
  spec.unit_cost[1] = {0.0, 6.60, 23.44, 31.96};
  return spec;
}

std::vector<ScenarioConfig> SweepGridSpec::expand() const {
  require(!total_demand.empty() && !gamma.empty() &&
              !target_profit[0].empty() && !target_profit[1].empty() &&
              !unit_cost[0].empty() && !unit_cost[1].empty(),
          "every sweep factor list must be non-empty");
  std::vector<ScenarioConfig> grid;
  grid.reserve(total_demand.size() * gamma.size() * target_profit[0].size() *
               target_profit[1].size() * unit_cost[0].size() *
               unit_cost[1].size());
  int id = 0;
  for (double D : total_demand)
    for (double g : gamma)
      for (double P1 : target_profit[0])
        for (double P2 : target_profit[1])
          for (double d1 : unit_cost[0])
            for (double d2 : unit_cost[1]) {
              ScenarioConfig config;
              config.scenario_id = ++id;
              config.total_demand = D;
              config.gamma = g;
              config.magnitude_exponent = magnitude_exponent;
              config.pub_share = pub_share;
              config.objective_weight = objective_weight;
              config.params[0] = {capacity[0], P1, d1};
              config.params[1] = {capacity[1], P2, d2};
              config.manufacturers[0] = {1, labels[0]};
              config.manufacturers[1] = {2, labels[1]};
              config.validate();
              grid.push_back(std::move(config));
            }
  return grid;
}

std::vector<ScenarioConfig> default_sweep_grid() {
  return SweepGridSpec::defaults().expand();
}

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

double number_field(const json& obj, const char* key) {
  if (!obj.contains(key))
    throw std::invalid_argument(std::string("missing field '") + key + "'");
  if (!obj.at(key).is_number())
    throw std::invalid_argument(std::string("field '") + key +
                                "' must be a number");
  return obj.at(key).get<double>();
}

}  // namespace

ScenarioConfig scenario_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object())
    throw std::invalid_argument("scenario config must be a JSON object");
  ScenarioConfig config;
  config.total_demand = number_field(j, "total_demand_millions");
  config.gamma = number_field(j, "gamma");
  config.magnitude_exponent = static_cast<int>(number_field(j, "k"));
  config.pub_share = number_field(j, "r_pub");
  config.objective_weight = number_field(j, "mu");
  if (j.contains("scenario_id"))
    config.scenario_id = j.at("scenario_id").get<int>();
  if (!j.contains("manufacturers") || !j.at("manufacturers").is_array() ||
      j.at("manufacturers").size() != 2)
    throw std::invalid_argument(
        "field 'manufacturers' must be an array of exactly two objects");
  for (int i = 0; i < kNumManufacturers; ++i) {
    const json& m = j.at("manufacturers").at(i);
    config.manufacturers[i].id = i + 1;
    config.manufacturers[i].label = m.value("label", config.manufacturers[i].label);
    config.params[i].capacity = number_field(m, "capacity_millions");
    config.params[i].target_profit = number_field(m, "target_profit_millions");
    config.params[i].unit_cost = number_field(m, "unit_cost_usd");
  }
  config.validate();
  return config;
}

std::string scenario_to_json(const ScenarioConfig& config) {
  nlohmann::ordered_json j;
  j["total_demand_millions"] = config.total_demand;
  j["gamma"] = config.gamma;
  j["k"] = config.magnitude_exponent;
  j["r_pub"] = config.pub_share;
  j["mu"] = config.objective_weight;
  if (config.scenario_id != 0) j["scenario_id"] = config.scenario_id;
  j["manufacturers"] = nlohmann::ordered_json::array();
  for (int i = 0; i < kNumManufacturers; ++i) {
    nlohmann::ordered_json m;
    m["label"] = config.manufacturers[i].label;
    m["capacity_millions"] = config.params[i].capacity;
    m["target_profit_millions"] = config.params[i].target_profit;
    m["unit_cost_usd"] = config.params[i].unit_cost;
    j["manufacturers"].push_back(std::move(m));
  }
  return j.dump(2) + "\n";
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open scenario config '" + path.string() +
                             "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return scenario_from_json(buffer.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

SweepGridSpec grid_spec_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object())
    throw std::invalid_argument("grid spec must be a JSON object");
  SweepGridSpec spec = SweepGridSpec::defaults();
  auto load_list = [&](const char* key, std::vector<double>& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_array() || j.at(key).empty())
      throw std::invalid_argument(std::string("field '") + key +
                                  "' must be a non-empty array of numbers");
    out = j.at(key).get<std::vector<double>>();
  };
  load_list("total_demand_millions", spec.total_demand);
  load_list("gamma", spec.gamma);
  load_list("target_profit_m1_millions", spec.target_profit[0]);
  load_list("target_profit_m2_millions", spec.target_profit[1]);
  load_list("unit_cost_m1_usd", spec.unit_cost[0]);
  load_list("unit_cost_m2_usd", spec.unit_cost[1]);
  if (j.contains("capacity_m1_millions"))
    spec.capacity[0] = number_field(j, "capacity_m1_millions");
  if (j.contains("capacity_m2_millions"))
    spec.capacity[1] = number_field(j, "capacity_m2_millions");
  if (j.contains("k")) spec.magnitude_exponent = static_cast<int>(number_field(j, "k"));
  if (j.contains("r_pub")) spec.pub_share = number_field(j, "r_pub");
  if (j.contains("mu")) spec.objective_weight = number_field(j, "mu");
  if (j.contains("labels")) {
    const json& labels = j.at("labels");
    if (!labels.is_array() || labels.size() != 2)
      throw std::invalid_argument("field 'labels' must be an array of two strings");
    spec.labels[0] = labels.at(0).get<std::string>();
    spec.labels[1] = labels.at(1).get<std::string>();
  }
  return spec;
}

SweepGridSpec load_grid_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open grid spec '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return grid_spec_from_json(buffer.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

}  // namespace vaxprice
