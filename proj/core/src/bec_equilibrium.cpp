#include "vaxprice/bec_equilibrium.hpp"

#include <cmath>
#include <stdexcept>

namespace vaxprice {

PrivateEquilibrium private_equilibrium(const DemandCurve& curve, double gamma) {
  curve.validate();
  if (!(gamma > 0.0 && gamma < 1.0) || !std::isfinite(gamma))
    throw std::domain_error("gamma must lie in (0,1)");
  const double denom = 2.0 * curve.b - curve.c;
  if (denom <= 0.0)  // unreachable given curve invariants
    throw std::domain_error("2b - c must be positive");

  PrivateEquilibrium eq;
  eq.p_priv = curve.a_priv / denom;
  eq.q_priv = curve.b * eq.p_priv;
  eq.surplus_bound =
      curve.a_priv * (1.0 + gamma) / gamma *
      (1.0 - 2.0 * std::sqrt(1.0 - gamma) /
                 (std::sqrt(1.0 + gamma) * (2.0 - gamma)));
  return eq;
}

SurplusReport check_surplus_regime(
    const PrivateEquilibrium& equilibrium,
    const std::array<ManufacturerParams, 2>& params) {
  SurplusReport report;
  for (int i = 0; i < kNumManufacturers; ++i) {
    report.headroom[i] = params[i].capacity - equilibrium.surplus_bound;
    report.admissible[i] = report.headroom[i] >= 0.0;
  }
  return report;
}

}  // namespace vaxprice
