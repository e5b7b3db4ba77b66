#pragma once

#include <array>

#include "vaxprice/market_model.hpp"

namespace vaxprice {

/// Symmetric Bertrand-Edgeworth-Chamberlin equilibrium of the private-sector
/// duopoly under the surplus regime: p = a_priv / (2b - c), q = b * p, plus
/// the residual-capacity bound U that the regime requires. The price is
/// shared by both manufacturers even when their unit costs differ.
/// Throws std::domain_error for gamma outside (0,1) or an invalid curve.
PrivateEquilibrium private_equilibrium(const DemandCurve& curve, double gamma);

/// Per-manufacturer admissibility of the surplus regime.
struct SurplusReport {
  /// K_i - U: the largest public-sector quantity manufacturer i can sell
  /// while keeping at least U of capacity for the private market. Negative
  /// when the regime cannot hold at all.
  std::array<double, 2> headroom{};
  std::array<bool, 2> admissible{};
};

SurplusReport check_surplus_regime(const PrivateEquilibrium& equilibrium,
                                   const std::array<ManufacturerParams, 2>& params);

}  // namespace vaxprice
