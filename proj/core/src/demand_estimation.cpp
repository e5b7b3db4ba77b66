#include "vaxprice/demand_estimation.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vaxprice {

namespace {

constexpr const char* kHeader =
    "year,pub_price_m1,pub_price_m2,priv_price_m1,priv_price_m2,"
    "total_demand_millions";

constexpr std::array<const char*, 6> kColumns = {
    "year",          "pub_price_m1",  "pub_price_m2",
    "priv_price_m1", "priv_price_m2", "total_demand_millions"};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  const auto last = s.find_last_not_of(" \t\r");
  if (first == std::string::npos) return "";
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_positive(const std::string& field, const std::string& source,
                      int row, const char* column) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value))
    throw std::invalid_argument(source + ": row " + std::to_string(row) +
                                ", column '" + column + "': '" + field +
                                "' is not a number");
  if (value <= 0.0)
    throw std::invalid_argument(source + ": row " + std::to_string(row) +
                                ", column '" + column + "': value must be positive");
  return value;
}

}  // namespace

std::vector<HistoricalRecord> parse_historical_csv(std::istream& in,
                                                   const std::string& source) {
  std::string line;
  bool saw_header = false;
  int row = 0;  // data-row counter, 1-based
  std::vector<HistoricalRecord> records;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kHeader)
        throw std::invalid_argument(source + ": header must be exactly '" +
                                    kHeader + "'");
      saw_header = true;
      continue;
    }
    ++row;
    const auto fields = split_fields(line);
    if (fields.size() != kColumns.size())
      throw std::invalid_argument(
          source + ": row " + std::to_string(row) + ": expected " +
          std::to_string(kColumns.size()) + " columns, got " +
          std::to_string(fields.size()));
    HistoricalRecord rec;
    rec.year_label = fields[0];
    rec.pub_price[0] = parse_positive(fields[1], source, row, kColumns[1]);
    rec.pub_price[1] = parse_positive(fields[2], source, row, kColumns[2]);
    rec.priv_price[0] = parse_positive(fields[3], source, row, kColumns[3]);
    rec.priv_price[1] = parse_positive(fields[4], source, row, kColumns[4]);
    rec.total_demand = parse_positive(fields[5], source, row, kColumns[5]);
    records.push_back(std::move(rec));
  }
  if (records.empty())
    throw std::invalid_argument(source + ": no data rows");
  return records;
}

std::vector<HistoricalRecord> load_historical(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open historical data '" + path.string() +
                             "'");
  return parse_historical_csv(in, path.string());
}

const std::vector<HistoricalRecord>& bundled_flu_data() {
  // Sanofi Pasteur and GlaxoSmithKline flu vaccine prices per dose (USD) and
  // total demand (millions of doses), contract years 2010-11 .. 2019-20.
  static const std::vector<HistoricalRecord> data = {
      {"2010-11", {10.64, 8.90}, {13.16, 10.98}, 155.1},
      {"2011-12", {11.68, 10.97}, {13.16, 12.41}, 132.0},
      {"2012-13", {11.68, 9.25}, {14.56, 10.98}, 134.9},
      {"2013-14", {17.05, 13.65}, {20.50, 15.90}, 134.5},
      {"2014-15", {17.44, 13.65}, {21.09, 15.90}, 147.8},
      {"2015-16", {17.94, 14.05}, {21.70, 16.05}, 146.4},
      {"2016-17", {19.14, 14.43}, {23.17, 16.82}, 145.9},
      {"2017-18", {15.68, 14.43}, {18.72, 16.82}, 155.3},
      {"2018-19", {15.11, 13.50}, {19.26, 16.82}, 169.1},
      {"2019-20", {13.76, 13.50}, {18.31, 16.82}, 174.5},
  };
  return data;
}

SlopePair compute_slopes(double gamma, int k) {
  if (!(gamma > 0.0 && gamma < 1.0) || !std::isfinite(gamma))
    throw std::domain_error("gamma must lie in (0,1)");
  if (k < 0) throw std::domain_error("magnitude exponent k must be >= 0");
  const double b = std::pow(10.0, k - 6) / ((1.0 + gamma) * (1.0 - gamma));
  return {b, gamma * b};
}

InterceptPair estimate_intercepts(std::span<const HistoricalRecord> records,
                                  double gamma, double r_pub,
                                  std::array<double, 2> unit_costs) {
  if (records.empty())
    throw std::invalid_argument("intercept estimation needs at least one record");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::domain_error("gamma must lie in (0,1)");
  if (!(r_pub > 0.0 && r_pub < 1.0))
    throw std::domain_error("r_pub must lie in (0,1)");
  if (unit_costs[0] < 0.0 || unit_costs[1] < 0.0)
    throw std::invalid_argument("unit costs must be nonnegative");

  const double cost_sum = unit_costs[0] + unit_costs[1];
  const double price_scale = 1.0 / (2.0 + 2.0 * gamma);
  double sum_pub = 0.0;
  double sum_priv = 0.0;
  for (const HistoricalRecord& rec : records) {
    sum_pub += 0.5 * r_pub * rec.total_demand +
               price_scale * (2.0 * (rec.pub_price[0] + rec.pub_price[1]) +
                              cost_sum);
    sum_priv += 0.5 * (1.0 - r_pub) * rec.total_demand +
                price_scale * (2.0 * (rec.priv_price[0] + rec.priv_price[1]) +
                               cost_sum);
  }
  const double years = static_cast<double>(records.size());
  return {sum_pub / years, sum_priv / years};
}

DemandCurve estimate_demand_curve(std::span<const HistoricalRecord> records,
                                  double gamma, int k, double r_pub,
                                  std::array<double, 2> unit_costs) {
  const auto [a_pub, a_priv] = estimate_intercepts(records, gamma, r_pub, unit_costs);
  const auto [b, c] = compute_slopes(gamma, k);
  DemandCurve curve{a_pub, a_priv, b, c};
  curve.validate();
  return curve;
}

}  // namespace vaxprice
