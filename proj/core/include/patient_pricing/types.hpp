#pragma once

#include "patient_pricing/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace patient_pricing {

/// A buyer: value for the item and the number of steps he is willing to wait.
struct BuyerType {
  Rational value;     // in [0, 1]
  int patience = 1;   // in [1, w_max]

  friend bool operator==(const BuyerType& a, const BuyerType& b) {
    return a.patience == b.patience && a.value == b.value;
  }
};

/// Canonical support order: by patience, then by value.
bool type_less(const BuyerType& a, const BuyerType& b);

/// Exact-probability distribution over buyer types with an explicit maximum
/// patience. Probabilities are strictly positive and sum to exactly one;
/// types are pairwise distinct. Immutable after construction.
class FiniteDistribution {
 public:
  FiniteDistribution(int w_max, std::vector<std::pair<BuyerType, Rational>> support);

  int w_max() const { return w_max_; }
  const std::vector<std::pair<BuyerType, Rational>>& support() const { return support_; }

  /// Distinct buyer values, ascending.
  const std::vector<Rational>& value_support() const { return values_; }
  /// Distinct values of buyers with the given patience, ascending.
  std::vector<Rational> values_with_patience(int w) const;

  /// Total probability of types satisfying the predicate.
  template <class Pred>
  Rational mass(Pred&& keep) const {
    Rational total = 0;
    for (const auto& [type, prob] : support_) {
      if (keep(type)) total += prob;
    }
    return total;
  }

  friend bool operator==(const FiniteDistribution& a, const FiniteDistribution& b) {
    return a.w_max_ == b.w_max_ && a.support_ == b.support_;
  }

 private:
  int w_max_;
  std::vector<std::pair<BuyerType, Rational>> support_;  // sorted by (patience, value)
  std::vector<Rational> values_;                         // ascending
};

/// A fixed sequence of posted prices, one per step.
class PurePricing {
 public:
  PurePricing() = default;
  explicit PurePricing(std::vector<Rational> prices);

  static PurePricing fixed(const Rational& price, int length);

  int length() const { return static_cast<int>(prices_.size()); }
  /// 1-based step access.
  const Rational& at(int step) const { return prices_[static_cast<std::size_t>(step - 1)]; }
  const std::vector<Rational>& prices() const { return prices_; }
  bool non_increasing() const;

  friend bool operator==(const PurePricing& a, const PurePricing& b) {
    return a.prices_ == b.prices_;
  }
  friend bool operator<(const PurePricing& a, const PurePricing& b) {
    return a.prices_ < b.prices_;
  }

 private:
  std::vector<Rational> prices_;
};

/// Forward sweep replacing every price increase with the running previous
/// price. Output is non-increasing and revenue-equivalent under any finite
/// distribution.
PurePricing monotonize_pure(const PurePricing& p);

/// A finitely supported distribution over pure pricings sharing one price
/// alphabet. Probabilities are positive and sum to one; pricings distinct.
class MixedPricing {
 public:
  MixedPricing(std::vector<Rational> alphabet,
               std::vector<std::pair<PurePricing, Rational>> support);

  static MixedPricing point_mass(PurePricing p);

  const std::vector<Rational>& alphabet() const { return alphabet_; }
  const std::vector<std::pair<PurePricing, Rational>>& support() const { return support_; }
  int length() const { return support_.front().first.length(); }

  friend bool operator==(const MixedPricing& a, const MixedPricing& b) {
    return a.alphabet_ == b.alphabet_ && a.support_ == b.support_;
  }

 private:
  std::vector<Rational> alphabet_;  // ascending, distinct
  std::vector<std::pair<PurePricing, Rational>> support_;
};

struct Purchase {
  int step = 0;  // 1-based
  Rational price;

  friend bool operator==(const Purchase& a, const Purchase& b) {
    return a.step == b.step && a.price == b.price;
  }
};

/// Empty means the buyer walked away without purchasing.
using PurchaseOutcome = std::optional<Purchase>;

/// The distribution assigning each distinct sampled type its frequency; any
/// strategy's revenue under it equals the strategy's empirical revenue on
/// the sample.
FiniteDistribution empirical_distribution(const std::vector<BuyerType>& sample, int w_max);

}  // namespace patient_pricing
