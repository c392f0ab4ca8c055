#include "patient_pricing/oracle.hpp"

#include "patient_pricing/buyer.hpp"
#include "patient_pricing/errors.hpp"
#include "patient_pricing/revenue.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace patient_pricing::oracle {

namespace {

void best_pure_recurse(const FiniteDistribution& dist, const std::vector<Rational>& values,
                       std::vector<Rational>& prefix, std::size_t max_index, PurePlan& best,
                       bool& first) {
  if (static_cast<int>(prefix.size()) == dist.w_max()) {
    PurePricing pricing(prefix);
    Rational revenue = revenue_pure(pricing, dist);
    if (first || revenue > best.revenue) {
      best = {std::move(pricing), std::move(revenue)};
      first = false;
    }
    return;
  }
  for (std::size_t j = 0; j <= max_index; ++j) {  // non-increasing continuations only
    prefix.push_back(values[j]);
    best_pure_recurse(dist, values, prefix, j, best, first);
    prefix.pop_back();
  }
}

}  // namespace

PurePlan brute_force_pure(const FiniteDistribution& dist, const BruteForceLimits& limits) {
  const std::vector<Rational>& values = dist.value_support();
  double count = 1;
  for (int i = 0; i < dist.w_max(); ++i) count *= static_cast<double>(values.size());
  if (count > static_cast<double>(limits.pure_budget)) {
    throw BudgetError("pure enumeration budget exceeded");
  }
  PurePlan best{PurePricing::fixed(values.front(), dist.w_max()), Rational(-1)};
  bool first = true;
  std::vector<Rational> prefix;
  best_pure_recurse(dist, values, prefix, values.size() - 1, best, first);
  return best;
}

Rational brute_force_buyer(const MixedPricing& pricing, const BuyerType& type,
                           const BruteForceLimits& limits) {
  PrefixTree tree(pricing);
  if (type.patience > tree.length()) {
    throw ValidationError("buyer patience exceeds pricing length");
  }
  if (tree.prefixes().size() > limits.buyer_history_budget) {
    throw BudgetError("history budget exceeded");
  }

  // Decision nodes: non-empty realizable prefixes the buyer can still act on.
  std::map<PriceHistory, std::size_t> node_index;
  for (const PriceHistory& prefix : tree.prefixes()) {
    if (prefix.empty()) continue;
    if (static_cast<int>(prefix.size()) > type.patience) continue;
    node_index.emplace(prefix, node_index.size());
  }
  const std::size_t n = node_index.size();
  if (n >= 64 || (std::size_t(1) << n) > limits.buyer_rule_budget) {
    throw BudgetError("stopping-rule budget exceeded");
  }

  Rational best = 0;  // never buying is always available
  const std::size_t rules = std::size_t(1) << n;
  for (std::size_t rule = 0; rule < rules; ++rule) {
    Rational utility = 0;
    for (const auto& [realized, prob] : pricing.support()) {
      PriceHistory prefix;
      for (int step = 1; step <= type.patience; ++step) {
        prefix.push_back(realized.at(step));
        if ((rule >> node_index.at(prefix)) & 1u) {
          utility += prob * (type.value - realized.at(step));
          break;
        }
      }
    }
    if (utility > best) best = utility;
  }
  return best;
}

namespace {

void compositions(int total, int parts, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    if (total >= 1) {
      current.push_back(total);
      out.push_back(current);
      current.pop_back();
    }
    return;
  }
  for (int first = 1; first + parts - 1 <= total; ++first) {
    current.push_back(first);
    compositions(total - first, parts - 1, current, out);
    current.pop_back();
  }
}

void subsets(std::size_t universe, int size, std::size_t start, std::vector<std::size_t>& current,
             std::vector<std::vector<std::size_t>>& out) {
  if (static_cast<int>(current.size()) == size) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = start; i < universe; ++i) {
    current.push_back(i);
    subsets(universe, size, i + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

MixedSearchResult brute_force_mixed(const FiniteDistribution& dist, std::vector<Rational> alphabet,
                                    int support_cap, int prob_grid) {
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  if (dist.w_max() > 2) throw BudgetError("mixture search handles w_max <= 2 only");
  if (alphabet.size() > 3) throw BudgetError("mixture search handles alphabets of size <= 3 only");
  if (support_cap < 1 || support_cap > 3) {
    throw BudgetError("mixture search handles support caps in [1, 3] only");
  }
  if (prob_grid < 1 || prob_grid > 24) {
    throw BudgetError("mixture search handles probability grids in [1, 24] only");
  }

  // Every pricing over the alphabet, lexicographic.
  std::vector<PurePricing> pricings;
  {
    const std::size_t n = alphabet.size();
    std::vector<std::size_t> odo(static_cast<std::size_t>(dist.w_max()), 0);
    while (true) {
      std::vector<Rational> prices;
      for (std::size_t digit : odo) prices.push_back(alphabet[digit]);
      pricings.emplace_back(std::move(prices));
      std::size_t k = odo.size();
      while (k > 0 && ++odo[k - 1] == n) {
        odo[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  }

  MixedSearchResult best{MixedPricing::point_mass(pricings.front()), Rational(-1)};
  bool first = true;
  for (int size = 1; size <= support_cap; ++size) {
    std::vector<std::vector<std::size_t>> chosen;
    std::vector<std::size_t> current;
    subsets(pricings.size(), size, 0, current, chosen);
    std::vector<std::vector<int>> weights;
    std::vector<int> scratch;
    compositions(prob_grid, size, scratch, weights);
    for (const auto& subset : chosen) {
      for (const auto& weight : weights) {
        std::vector<std::pair<PurePricing, Rational>> support;
        for (int i = 0; i < size; ++i) {
          support.emplace_back(pricings[subset[static_cast<std::size_t>(i)]],
                               Rational(weight[static_cast<std::size_t>(i)], prob_grid));
        }
        MixedPricing candidate(alphabet, std::move(support));
        Rational revenue = revenue_mixed(candidate, dist);
        if (first || revenue > best.revenue) {
          best = {std::move(candidate), std::move(revenue)};
          first = false;
        }
      }
    }
  }
  return best;
}

FiniteDistribution random_small_distribution(std::mt19937_64& rng, int max_values,
                                             int max_patience) {
  const int w_max = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_patience));
  const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_values));

  std::vector<int> eighths{0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::shuffle(eighths.begin(), eighths.end(), rng);

  std::vector<std::pair<BuyerType, Rational>> support;
  Integer weight_sum = 0;
  std::vector<Integer> weights;
  for (int i = 0; i < k; ++i) {
    const int patience = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(w_max));
    support.push_back({BuyerType{Rational(eighths[static_cast<std::size_t>(i)], 8), patience},
                       Rational(0)});
    Integer w = 1 + static_cast<long>(rng() % 8);
    weight_sum += w;
    weights.push_back(std::move(w));
  }
  for (int i = 0; i < k; ++i) {
    support[static_cast<std::size_t>(i)].second =
        Rational(weights[static_cast<std::size_t>(i)], weight_sum);
  }
  return FiniteDistribution(w_max, std::move(support));
}

MixedPricing random_small_mixed(std::mt19937_64& rng, int w_max, int max_support) {
  const int alphabet_size = 2 + static_cast<int>(rng() % 2);
  std::vector<int> eighths{1, 2, 3, 4, 5, 6, 7, 8};
  std::shuffle(eighths.begin(), eighths.end(), rng);
  std::vector<Rational> alphabet;
  for (int i = 0; i < alphabet_size; ++i) {
    alphabet.push_back(Rational(eighths[static_cast<std::size_t>(i)], 8));
  }
  std::sort(alphabet.begin(), alphabet.end());

  double pricing_space = 1;
  for (int i = 0; i < w_max; ++i) pricing_space *= alphabet_size;
  int target = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_support));
  target = std::min(target, static_cast<int>(pricing_space));

  std::set<std::vector<Rational>> distinct;
  while (static_cast<int>(distinct.size()) < target) {
    std::vector<Rational> prices;
    for (int i = 0; i < w_max; ++i) {
      prices.push_back(alphabet[rng() % alphabet.size()]);
    }
    distinct.insert(std::move(prices));
  }

  std::vector<std::pair<PurePricing, Rational>> support;
  Integer weight_sum = 0;
  std::vector<Integer> weights;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    Integer w = 1 + static_cast<long>(rng() % 8);
    weight_sum += w;
    weights.push_back(std::move(w));
  }
  std::size_t at = 0;
  for (const auto& prices : distinct) {
    support.emplace_back(PurePricing(prices), Rational(weights[at++], weight_sum));
  }
  return MixedPricing(std::move(alphabet), std::move(support));
}

}  // namespace patient_pricing::oracle
