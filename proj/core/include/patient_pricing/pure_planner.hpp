#pragma once

#include "patient_pricing/types.hpp"

#include <cstddef>
#include <vector>

namespace patient_pricing {

struct PurePlan {
  PurePricing pricing;
  Rational revenue;
};

struct PureDpStats {
  std::size_t cells = 0;        // table entries filled
  std::size_t comparisons = 0;  // candidate scans inside the sweep
};

/// Backward dynamic program over a sorted candidate price set. Each step
/// keeps, per price, the best revenue of a non-increasing continuation, with
/// the inner maximum carried as a running prefix-max. Argmax ties break
/// toward the lower price. Output prices all come from `prices`, the output
/// is non-increasing, and its revenue is exactly the maximum achievable by
/// any pure strategy over that price set.
PurePlan plan_pure_with_prices(const FiniteDistribution& dist, std::vector<Rational> prices,
                               PureDpStats* stats = nullptr);

/// Optimal pure strategy: candidate prices are the distribution's value
/// support, which is sufficient for exact optimality over all pure
/// strategies.
PurePlan plan_pure(const FiniteDistribution& dist, PureDpStats* stats = nullptr);

/// {0, eps, 2*eps, ...} clipped to [0, 1], endpoint 1 always included.
std::vector<Rational> price_grid(const Rational& epsilon);

/// Planning over the epsilon grid; revenue is within epsilon of the exact
/// pure optimum.
PurePlan plan_pure_discretized(const FiniteDistribution& dist, const Rational& epsilon,
                               PureDpStats* stats = nullptr);

}  // namespace patient_pricing
