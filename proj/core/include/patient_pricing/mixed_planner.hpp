#pragma once

#include "patient_pricing/buyer.hpp"
#include "patient_pricing/types.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace patient_pricing {

struct MixedPlannerOptions {
  /// Hard limits; the state space is exponential in the maximum patience.
  int max_patience_guard = 4;
  int max_values_guard = 4;
};

/// One dynamic-programming cell along the reconstructed strategy, kept for
/// cross-checking the planner against the buyer simulator. Ceilings describe
/// the simulated buyer flow (ties buy immediately), so they match a replay
/// of the threshold policies along the prefix.
struct MixedChainNode {
  int step = 0;                                       // 1-based
  PriceHistory prefix;                                // realized prices p_1..p_step
  std::vector<std::optional<Rational>> ceilings;      // survivors entering `step`, per patience
  std::vector<std::optional<Rational>> next_ceilings; // survivors after `step`
  std::vector<Rational> alpha;                        // next-step price distribution
  std::vector<Rational> type_utilities;               // per support type, from `step` onward
};

struct MixedPlan {
  MixedPricing strategy;
  Rational revenue;        // recomputed exactly; equals the table's root value
  Rational dp_root_value;
  std::vector<MixedChainNode> chain;
  std::size_t states = 0;
  std::size_t lp_calls = 0;
};

/// Optimal mixed strategy over a finite price alphabet: backward sweep over
/// (step, posted price, surviving-buyer ceilings), one linear program per
/// candidate successor, sparse reconstruction of the optimal mixture.
MixedPlan plan_mixed(const FiniteDistribution& dist, std::vector<Rational> alphabet,
                     const MixedPlannerOptions& options = {});

/// plan_mixed over the epsilon grid {0, eps, ..., 1}; the revenue is within
/// eps * w_max of the optimal mixed strategy over arbitrary prices.
MixedPlan plan_mixed_discretized(const FiniteDistribution& dist, const Rational& epsilon,
                                 const MixedPlannerOptions& options = {});

}  // namespace patient_pricing
