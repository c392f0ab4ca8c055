#pragma once

#include "patient_pricing/types.hpp"

#include <map>
#include <vector>

namespace patient_pricing {

/// Realized prices up to some step; the empty history is the game start.
using PriceHistory = std::vector<Rational>;

/// Best response against a fixed price sequence: buy at the first step
/// i <= w where the immediate surplus weakly beats the best continuation
/// (ties buy). For non-increasing pricings the paid price is the step-w one.
PurchaseOutcome pure_best_response(const PurePricing& pricing, const BuyerType& type);

/// Realizable prefixes of a mixed pricing's support, with exact conditional
/// next-price distributions obtained by renormalizing support weights.
class PrefixTree {
 public:
  explicit PrefixTree(const MixedPricing& pricing);

  int length() const { return length_; }
  bool realizable(const PriceHistory& prefix) const;
  /// Conditional distribution of the next price given the prefix; pairs are
  /// (price, probability), ascending by price, probabilities summing to 1.
  const std::vector<std::pair<Rational, Rational>>& next_prices(const PriceHistory& prefix) const;
  /// All realizable prefixes, lengths 0..length, shortest first.
  const std::vector<PriceHistory>& prefixes() const { return prefixes_; }

 private:
  int length_;
  std::vector<PriceHistory> prefixes_;
  std::map<PriceHistory, std::vector<std::pair<Rational, Rational>>> children_;
};

/// Optimal continuation utilities over the realizable prefix tree. A key of
/// length i maps to the buyer's best expected utility from step i+1 onward
/// given that history and no purchase yet (zero once patience has expired,
/// and for every key of full length).
std::map<PriceHistory, Rational> partial_utilities(const MixedPricing& pricing,
                                                   const BuyerType& type);

/// Buy-at-first-step rule: purchase at step i iff p_i <= threshold(p_1..p_i),
/// with equality buying. Thresholds equal value minus the continuation
/// utility, so they reduce to the bare value from step w onward.
struct ThresholdPolicy {
  BuyerType type;
  std::map<PriceHistory, Rational> thresholds;  // keys of lengths 1..length

  PurchaseOutcome apply(const PurePricing& realized) const;
};

ThresholdPolicy best_response_thresholds(const MixedPricing& pricing, const BuyerType& type);

/// Threshold policy applied along one realized support pricing.
PurchaseOutcome simulate_purchase(const MixedPricing& pricing, const BuyerType& type,
                                  const PurePricing& realized);

/// The buyer's maximum expected utility against the mixed pricing.
Rational best_response_utility(const MixedPricing& pricing, const BuyerType& type);

}  // namespace patient_pricing
