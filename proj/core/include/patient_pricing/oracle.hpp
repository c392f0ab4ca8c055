#pragma once

#include "patient_pricing/pure_planner.hpp"
#include "patient_pricing/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace patient_pricing::oracle {

/// Hard enumeration budgets; exceeding one raises BudgetError so test time
/// stays bounded.
struct BruteForceLimits {
  std::size_t pure_budget = 1000000;         // |V|^w_max
  std::size_t buyer_history_budget = 10000;  // realizable histories
  std::size_t buyer_rule_budget = 1u << 20;  // stopping rules enumerated
};

/// Exhaustive scan of every non-increasing pricing over the value support.
PurePlan brute_force_pure(const FiniteDistribution& dist, const BruteForceLimits& limits = {});

/// Maximum expected utility over every deterministic stopping rule on the
/// realizable price-history tree; certifies the threshold best response.
Rational brute_force_buyer(const MixedPricing& pricing, const BuyerType& type,
                           const BruteForceLimits& limits = {});

struct MixedSearchResult {
  MixedPricing strategy;
  Rational revenue;
};

/// Grid search over mixtures of at most `support_cap` pricings from the
/// alphabet with probabilities in multiples of 1/prob_grid; a certified
/// lower bound on the optimal alphabet-restricted mixed revenue.
MixedSearchResult brute_force_mixed(const FiniteDistribution& dist,
                                    std::vector<Rational> alphabet, int support_cap,
                                    int prob_grid);

/// Random small instances for randomized cross-checks: values on the grid
/// {i/8}, small patience, probabilities from integer compositions.
FiniteDistribution random_small_distribution(std::mt19937_64& rng, int max_values = 4,
                                             int max_patience = 3);
MixedPricing random_small_mixed(std::mt19937_64& rng, int w_max, int max_support = 4);

}  // namespace patient_pricing::oracle
