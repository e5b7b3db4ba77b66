#pragma once

#include <array>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "vaxprice/market_model.hpp"

namespace vaxprice {

/// One contract-year of historical per-sector vaccine prices and total demand.
/// Prices are USD per single dose; demand is millions of doses across both
/// sectors and manufacturers.
struct HistoricalRecord {
  std::string year_label;
  std::array<double, 2> pub_price{};
  std::array<double, 2> priv_price{};
  double total_demand = 0.0;
};

// CSV schema (header required, columns exactly):
//   year,pub_price_m1,pub_price_m2,priv_price_m1,priv_price_m2,total_demand_millions
std::vector<HistoricalRecord> load_historical(const std::filesystem::path& path);
std::vector<HistoricalRecord> parse_historical_csv(std::istream& in,
                                                   const std::string& source_name);

/// The bundled flu-vaccine dataset: ten contract years, 2010-11 through
/// 2019-20, used as the default input everywhere a CSV is optional.
const std::vector<HistoricalRecord>& bundled_flu_data();

struct SlopePair {
  double b = 0.0;  // own-price slope, millions of persons per USD
  double c = 0.0;  // cross-price slope, millions of persons per USD
};

/// Demand slopes from product similarity and the price/quantity magnitude
/// exponent k (b carries a factor 10^(k-6) so that quantities are in
/// millions). Throws std::domain_error unless 0 < gamma < 1 and k >= 0.
SlopePair compute_slopes(double gamma, int k);

struct InterceptPair {
  double a_pub = 0.0;   // millions of persons
  double a_priv = 0.0;  // millions of persons
};

/// Zero-price demand intercepts for both sectors, averaged over the
/// historical years. Per-dose historical prices are doubled to price a
/// two-dose regimen and the scenario unit costs are added on top; each
/// sector's share of a year's total demand is r_s * D_y.
InterceptPair estimate_intercepts(std::span<const HistoricalRecord> records,
                                  double gamma, double r_pub,
                                  std::array<double, 2> unit_costs);

/// Full demand curve for one scenario parameterization.
DemandCurve estimate_demand_curve(std::span<const HistoricalRecord> records,
                                  double gamma, int k, double r_pub,
                                  std::array<double, 2> unit_costs);

}  // namespace vaxprice
