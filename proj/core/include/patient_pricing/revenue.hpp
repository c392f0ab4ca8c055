#pragma once

#include "patient_pricing/types.hpp"

#include <utility>
#include <vector>

namespace patient_pricing {

/// Revenue extracted from one buyer (price paid, or zero without a sale).
Rational revenue_pure_single(const PurePricing& pricing, const BuyerType& type);
Rational revenue_mixed_single(const MixedPricing& pricing, const BuyerType& type);

/// Exact expected revenue over the buyer distribution.
Rational revenue_pure(const PurePricing& pricing, const FiniteDistribution& dist);
Rational revenue_mixed(const MixedPricing& pricing, const FiniteDistribution& dist);

/// Mean per-buyer revenue over a sample; equals the revenue under the
/// sample's empirical distribution.
Rational empirical_revenue(const PurePricing& pricing, const std::vector<BuyerType>& sample);
Rational empirical_revenue(const MixedPricing& pricing, const std::vector<BuyerType>& sample);

/// Best single posted price, searched over the distribution's value support;
/// ties break toward the lower price. Returns (price, revenue).
std::pair<Rational, Rational> best_fixed_price(const FiniteDistribution& dist);

}  // namespace patient_pricing
