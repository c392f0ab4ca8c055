#include "patient_pricing/pure_planner.hpp"

#include "patient_pricing/errors.hpp"
#include "patient_pricing/revenue.hpp"

#include <algorithm>

namespace patient_pricing {

PurePlan plan_pure_with_prices(const FiniteDistribution& dist, std::vector<Rational> prices,
                               PureDpStats* stats) {
  std::sort(prices.begin(), prices.end());
  prices.erase(std::unique(prices.begin(), prices.end()), prices.end());
  if (prices.empty()) throw ValidationError("empty candidate price set");
  for (const Rational& p : prices) {
    if (!in_unit_interval(p)) {
      throw ValidationError("candidate price " + format_rational(p) + " outside [0, 1]");
    }
  }

  const int w = dist.w_max();
  const std::size_t n = prices.size();
  PureDpStats local;
  PureDpStats& st = stats != nullptr ? *stats : local;
  st = PureDpStats{};

  // revenue[j]: best revenue from the current step onward when this step
  // posts prices[j]; successor[i][j]: index of the next step's price.
  std::vector<Rational> revenue(n, Rational(0));
  std::vector<std::vector<std::size_t>> successor(
      static_cast<std::size_t>(w), std::vector<std::size_t>(n, 0));

  for (int step = w; step >= 1; --step) {
    std::vector<Rational> current(n);
    Rational running_best = -1;
    std::size_t running_arg = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (revenue[j] > running_best) {  // strict keeps the lowest price on ties
        running_best = revenue[j];
        running_arg = j;
      }
      ++st.comparisons;
      Rational base =
          dist.mass([&](const BuyerType& z) { return z.patience == step && z.value >= prices[j]; }) *
          prices[j];
      current[j] = std::move(base);
      if (step < w) current[j] += running_best;
      successor[static_cast<std::size_t>(step - 1)][j] = running_arg;
      ++st.cells;
    }
    revenue = std::move(current);
  }

  std::size_t first = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (revenue[j] > revenue[first]) first = j;
  }

  std::vector<Rational> plan;
  plan.reserve(static_cast<std::size_t>(w));
  std::size_t at = first;
  plan.push_back(prices[at]);
  for (int step = 1; step < w; ++step) {
    at = successor[static_cast<std::size_t>(step - 1)][at];
    plan.push_back(prices[at]);
  }

  PurePricing pricing(std::move(plan));
  Rational recomputed = revenue_pure(pricing, dist);
  if (recomputed != revenue[first]) {
    throw std::logic_error("pure planner table value does not match recomputed revenue");
  }
  return {std::move(pricing), std::move(recomputed)};
}

PurePlan plan_pure(const FiniteDistribution& dist, PureDpStats* stats) {
  return plan_pure_with_prices(dist, dist.value_support(), stats);
}

std::vector<Rational> price_grid(const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1) throw ValidationError("epsilon must lie in (0, 1]");
  std::vector<Rational> grid;
  Rational p = 0;
  while (p < 1) {
    grid.push_back(p);
    p += epsilon;
  }
  grid.push_back(Rational(1));  // endpoint kept even when 1/epsilon is not integral
  return grid;
}

PurePlan plan_pure_discretized(const FiniteDistribution& dist, const Rational& epsilon,
                               PureDpStats* stats) {
  return plan_pure_with_prices(dist, price_grid(epsilon), stats);
}

}  // namespace patient_pricing
