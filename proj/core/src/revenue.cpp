#include "patient_pricing/revenue.hpp"

#include "patient_pricing/buyer.hpp"
#include "patient_pricing/errors.hpp"

namespace patient_pricing {

Rational revenue_pure_single(const PurePricing& pricing, const BuyerType& type) {
  PurchaseOutcome outcome = pure_best_response(pricing, type);
  return outcome ? outcome->price : Rational(0);
}

Rational revenue_mixed_single(const MixedPricing& pricing, const BuyerType& type) {
  ThresholdPolicy policy = best_response_thresholds(pricing, type);
  Rational total = 0;
  for (const auto& [realized, prob] : pricing.support()) {
    PurchaseOutcome outcome = policy.apply(realized);
    if (outcome) total += prob * outcome->price;
  }
  return total;
}

namespace {

void check_length(int pricing_length, const FiniteDistribution& dist) {
  if (pricing_length != dist.w_max()) {
    throw ValidationError("pricing length " + std::to_string(pricing_length) +
                          " does not match distribution w_max " + std::to_string(dist.w_max()));
  }
}

}  // namespace

Rational revenue_pure(const PurePricing& pricing, const FiniteDistribution& dist) {
  check_length(pricing.length(), dist);
  Rational total = 0;
  for (const auto& [type, prob] : dist.support()) {
    total += prob * revenue_pure_single(pricing, type);
  }
  return total;
}

Rational revenue_mixed(const MixedPricing& pricing, const FiniteDistribution& dist) {
  check_length(pricing.length(), dist);
  Rational total = 0;
  for (const auto& [type, prob] : dist.support()) {
    total += prob * revenue_mixed_single(pricing, type);
  }
  return total;
}

Rational empirical_revenue(const PurePricing& pricing, const std::vector<BuyerType>& sample) {
  if (sample.empty()) throw ValidationError("empty sample");
  Rational total = 0;
  for (const BuyerType& z : sample) total += revenue_pure_single(pricing, z);
  return total / Rational(static_cast<long>(sample.size()));
}

Rational empirical_revenue(const MixedPricing& pricing, const std::vector<BuyerType>& sample) {
  if (sample.empty()) throw ValidationError("empty sample");
  Rational total = 0;
  for (const BuyerType& z : sample) total += revenue_mixed_single(pricing, z);
  return total / Rational(static_cast<long>(sample.size()));
}

std::pair<Rational, Rational> best_fixed_price(const FiniteDistribution& dist) {
  Rational best_price = 0;
  Rational best_revenue = -1;
  for (const Rational& q : dist.value_support()) {
    Rational rev = revenue_pure(PurePricing::fixed(q, dist.w_max()), dist);
    if (rev > best_revenue) {  // strict, so ties keep the lower price
      best_revenue = rev;
      best_price = q;
    }
  }
  return {best_price, best_revenue};
}

}  // namespace patient_pricing
