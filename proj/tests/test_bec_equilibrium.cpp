#include <doctest.h>

#include <cmath>
#include <random>

#include "vaxprice/bec_equilibrium.hpp"
#include "vaxprice/demand_estimation.hpp"

using namespace vaxprice;

namespace {

DemandCurve curve_with(double a_priv, double gamma) {
  const auto [b, c] = compute_slopes(gamma, 6);
  return DemandCurve{a_priv, a_priv, b, c};  // a_pub unused here
}

}  // namespace

TEST_CASE("equilibrium reproduces the published prices and quantities") {
  const auto curve = estimate_demand_curve(bundled_flu_data(), 0.75, 6, 0.57,
                                           {31.96, 31.96});
  const auto eq = private_equilibrium(curve, 0.75);
  CHECK(eq.p_priv == doctest::Approx(24.3082375).epsilon(1e-12));
  CHECK(eq.q_priv == doctest::Approx(55.56168571428572).epsilon(1e-12));
  CHECK(eq.surplus_bound == doctest::Approx(64.05331478431323).epsilon(1e-12));
  CHECK(std::abs(eq.p_priv - 24.31) < 0.02);
  CHECK(std::abs(eq.q_priv - 55.6) < 0.1);
  // the surplus bound scales the private intercept by a fixed factor
  CHECK(eq.surplus_bound / curve.a_priv ==
        doctest::Approx(0.9222659674322184).epsilon(1e-12));

  const auto mixed = estimate_demand_curve(bundled_flu_data(), 0.75, 6, 0.57,
                                           {23.44, 31.96});
  const auto eq2 = private_equilibrium(mixed, 0.75);
  CHECK(std::abs(eq2.p_priv - 23.46) < 0.02);
  CHECK(std::abs(eq2.q_priv - 53.6) < 0.1);
}

TEST_CASE("surplus bound factors are nonnegative at the swept similarities") {
  const double factors[] = {0.5737333186200955, 0.6905989232414965,
                            0.9222659674322184};
  const double gammas[] = {0.25, 0.5, 0.75};
  for (int i = 0; i < 3; ++i) {
    const auto eq = private_equilibrium(curve_with(100.0, gammas[i]), gammas[i]);
    CHECK(eq.surplus_bound ==
          doctest::Approx(100.0 * factors[i]).epsilon(1e-12));
    CHECK(eq.surplus_bound >= 0.0);
  }
}

TEST_CASE("fixed-point and scaling identities") {
  std::mt19937 gen(23);
  std::uniform_real_distribution<double> a_dist(1.0, 500.0);
  std::uniform_real_distribution<double> gamma_dist(0.01, 0.99);
  for (int i = 0; i < 1000; ++i) {
    const double a_priv = a_dist(gen);
    const double gamma = gamma_dist(gen);
    const int k = static_cast<int>(gen() % 9);
    const auto [b, c] = compute_slopes(gamma, k);
    const DemandCurve curve{a_priv, a_priv, b, c};
    const auto eq = private_equilibrium(curve, gamma);

    CHECK((2.0 * b - c) * eq.p_priv ==
          doctest::Approx(a_priv).epsilon(1e-12));
    CHECK(eq.q_priv == b * eq.p_priv);
    // substituting the symmetric equilibrium back into the demand curve
    CHECK(std::abs(a_priv - b * eq.p_priv + c * eq.p_priv - eq.q_priv) <
          1e-10);
    CHECK(eq.surplus_bound >= 0.0);

    // p and q scale linearly in the intercept
    const DemandCurve doubled{2.0 * a_priv, 2.0 * a_priv, b, c};
    const auto eq2 = private_equilibrium(doubled, gamma);
    CHECK(eq2.p_priv == doctest::Approx(2.0 * eq.p_priv).epsilon(1e-14));
    CHECK(eq2.q_priv == doctest::Approx(2.0 * eq.q_priv).epsilon(1e-14));
  }
}

TEST_CASE("equilibrium rejects invalid inputs") {
  const auto curve = curve_with(69.45, 0.75);
  CHECK_THROWS_AS(private_equilibrium(curve, 0.0), std::domain_error);
  CHECK_THROWS_AS(private_equilibrium(curve, 1.0), std::domain_error);
  DemandCurve broken = curve;
  broken.c = broken.b + 1.0;
  CHECK_THROWS_AS(private_equilibrium(broken, 0.75), std::invalid_argument);
  broken = curve;
  broken.a_priv = 0.0;
  CHECK_THROWS_AS(private_equilibrium(broken, 0.75), std::invalid_argument);
}

TEST_CASE("surplus regime headroom") {
  const std::array<ManufacturerParams, 2> params = {
      ManufacturerParams{250.0, 0.0, 0.0}, ManufacturerParams{200.0, 0.0, 0.0}};

  PrivateEquilibrium eq{24.31, 55.6, 64.1};
  auto report = check_surplus_regime(eq, params);
  CHECK(report.headroom[0] == doctest::Approx(185.9));
  CHECK(report.headroom[1] == doctest::Approx(135.9));
  CHECK(report.admissible[0]);
  CHECK(report.admissible[1]);

  eq.surplus_bound = 0.0;
  report = check_surplus_regime(eq, params);
  CHECK(report.headroom[0] == 250.0);
  CHECK(report.headroom[1] == 200.0);

  eq.surplus_bound = 300.0;
  report = check_surplus_regime(eq, params);
  CHECK(!report.admissible[0]);
  CHECK(!report.admissible[1]);
  CHECK(report.headroom[0] == doctest::Approx(-50.0));
}
