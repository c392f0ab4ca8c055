#include "patient_pricing/buyer.hpp"

#include "patient_pricing/errors.hpp"

#include <algorithm>

namespace patient_pricing {

PurchaseOutcome pure_best_response(const PurePricing& pricing, const BuyerType& type) {
  const int w = type.patience;
  if (w > pricing.length()) {
    throw ValidationError("buyer patience " + std::to_string(w) + " exceeds pricing length " +
                          std::to_string(pricing.length()));
  }
  // continuation[i] = best achievable surplus from step i+1 through step w.
  std::vector<Rational> continuation(static_cast<std::size_t>(w) + 1, Rational(0));
  for (int i = w - 1; i >= 1; --i) {
    Rational now = type.value - pricing.at(i + 1);
    if (now < 0) now = 0;
    continuation[static_cast<std::size_t>(i)] =
        std::max(now, continuation[static_cast<std::size_t>(i) + 1]);
  }
  for (int i = 1; i <= w; ++i) {
    if (type.value - pricing.at(i) >= continuation[static_cast<std::size_t>(i)]) {
      return Purchase{i, pricing.at(i)};
    }
  }
  return std::nullopt;
}

PrefixTree::PrefixTree(const MixedPricing& pricing) : length_(pricing.length()) {
  // Group support weights by shared prefix, level by level.
  std::map<PriceHistory, Rational> level;
  level[{}] = 1;
  prefixes_.push_back({});
  for (int depth = 0; depth < length_; ++depth) {
    std::map<PriceHistory, std::map<Rational, Rational>> grouped;
    for (const auto& [p, prob] : pricing.support()) {
      PriceHistory prefix(p.prices().begin(), p.prices().begin() + depth);
      grouped[prefix][p.at(depth + 1)] += prob;
    }
    std::map<PriceHistory, Rational> next;
    for (auto& [prefix, buckets] : grouped) {
      const Rational total = level.at(prefix);
      auto& out = children_[prefix];
      for (auto& [price, weight] : buckets) {
        out.emplace_back(price, weight / total);
        PriceHistory extended = prefix;
        extended.push_back(price);
        next[extended] = weight;
        prefixes_.push_back(std::move(extended));
      }
    }
    level = std::move(next);
  }
}

bool PrefixTree::realizable(const PriceHistory& prefix) const {
  if (prefix.size() > static_cast<std::size_t>(length_)) return false;
  if (prefix.empty()) return true;
  PriceHistory parent(prefix.begin(), prefix.end() - 1);
  auto it = children_.find(parent);
  if (it == children_.end()) return false;
  for (const auto& [price, prob] : it->second) {
    if (price == prefix.back()) return true;
  }
  return false;
}

const std::vector<std::pair<Rational, Rational>>& PrefixTree::next_prices(
    const PriceHistory& prefix) const {
  auto it = children_.find(prefix);
  if (it == children_.end()) {
    throw ValidationError("price history is not realizable under this mixed pricing");
  }
  return it->second;
}

std::map<PriceHistory, Rational> partial_utilities(const MixedPricing& pricing,
                                                   const BuyerType& type) {
  PrefixTree tree(pricing);
  const int w = type.patience;
  if (w > tree.length()) {
    throw ValidationError("buyer patience " + std::to_string(w) + " exceeds pricing length " +
                          std::to_string(tree.length()));
  }
  std::map<PriceHistory, Rational> utilities;
  // Deepest prefixes first so each value can read its children.
  const auto& prefixes = tree.prefixes();
  for (auto it = prefixes.rbegin(); it != prefixes.rend(); ++it) {
    const PriceHistory& prefix = *it;
    const int next_step = static_cast<int>(prefix.size()) + 1;
    if (next_step > w) {
      utilities[prefix] = 0;
      continue;
    }
    Rational expected = 0;
    for (const auto& [price, prob] : tree.next_prices(prefix)) {
      PriceHistory extended = prefix;
      extended.push_back(price);
      Rational now = type.value - price;
      const Rational& later = utilities.at(extended);
      expected += prob * std::max(now, later);
    }
    utilities[prefix] = std::move(expected);
  }
  return utilities;
}

PurchaseOutcome ThresholdPolicy::apply(const PurePricing& realized) const {
  PriceHistory prefix;
  const int w = type.patience;
  for (int i = 1; i <= std::min(w, realized.length()); ++i) {
    prefix.push_back(realized.at(i));
    auto it = thresholds.find(prefix);
    if (it == thresholds.end()) {
      throw ValidationError("realized pricing is not in the support of this mixed pricing");
    }
    if (realized.at(i) <= it->second) {
      return Purchase{i, realized.at(i)};
    }
  }
  return std::nullopt;
}

ThresholdPolicy best_response_thresholds(const MixedPricing& pricing, const BuyerType& type) {
  auto utilities = partial_utilities(pricing, type);
  ThresholdPolicy policy{type, {}};
  for (const auto& [prefix, u] : utilities) {
    if (prefix.empty()) continue;
    policy.thresholds[prefix] = type.value - u;
  }
  return policy;
}

PurchaseOutcome simulate_purchase(const MixedPricing& pricing, const BuyerType& type,
                                  const PurePricing& realized) {
  bool in_support = false;
  for (const auto& [p, prob] : pricing.support()) {
    if (p == realized) {
      in_support = true;
      break;
    }
  }
  if (!in_support) {
    throw ValidationError("realized pricing is not in the support of this mixed pricing");
  }
  return best_response_thresholds(pricing, type).apply(realized);
}

Rational best_response_utility(const MixedPricing& pricing, const BuyerType& type) {
  return partial_utilities(pricing, type).at({});
}

}  // namespace patient_pricing
