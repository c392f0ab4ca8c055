#pragma once

#include "patient_pricing/mixed_planner.hpp"
#include "patient_pricing/types.hpp"

#include <cstdint>
#include <vector>

namespace patient_pricing {

/// Empirical revenue maximizers: planning on the empirical distribution is
/// an exact ERM over the corresponding strategy class.
PurePricing erm_pure(const std::vector<BuyerType>& sample, int w_max);
/// ERM restricted to the price grid {0, 1/k, ..., 1}; its empirical revenue
/// is within 1/k of the unrestricted pure ERM's.
PurePricing erm_pure_discretized(const std::vector<BuyerType>& sample, int w_max, int k);
MixedPricing erm_mixed(const std::vector<BuyerType>& sample, int w_max,
                       std::vector<Rational> alphabet, const MixedPlannerOptions& options = {});

struct LearningMode {
  enum class Kind { pure, pure_grid, mixed };
  Kind kind = Kind::pure;
  int grid_k = 0;                  // pure_grid only
  std::vector<Rational> alphabet;  // mixed only

  static LearningMode pure() { return {Kind::pure, 0, {}}; }
  static LearningMode pure_grid(int k) { return {Kind::pure_grid, k, {}}; }
  static LearningMode mixed(std::vector<Rational> alphabet) {
    return {Kind::mixed, 0, std::move(alphabet)};
  }
};

struct LearningCurvePoint {
  std::size_t m = 0;
  int trials = 0;
  Rational mean_gap;            // exact mean of the per-trial gaps
  double std_error = 0.0;       // sample standard error, decimal
  std::vector<Rational> gaps;   // per-trial, in trial order
};

/// For each sample size: draw i.i.d. samples on per-(m, trial) derived RNG
/// streams, run the chosen ERM, and record the true-revenue gap against the
/// matching planner optimum on `dist` (for mixed, the optimum over the same
/// alphabet).
std::vector<LearningCurvePoint> learning_curve(const FiniteDistribution& dist,
                                               const LearningMode& mode,
                                               const std::vector<std::size_t>& m_values,
                                               int trials, std::uint64_t seed, int threads = 0,
                                               const MixedPlannerOptions& options = {});

/// Hard family for pure-strategy learning: per patience w the two values
/// ((w_max-1)/w_max)^(2w-1) and ((w_max-1)/w_max)^(2w), patience uniform,
/// and the in-patience split tilted by sigma_w * epsilon/16 around
/// (w_max-1)/w_max.
FiniteDistribution adversarial_distribution(const std::vector<int>& sigma, int w_max,
                                            const Rational& epsilon);
/// The revenue-optimal pricing for that family: the higher value at steps
/// with sigma=+1, the lower one otherwise.
PurePricing adversarial_bayes_pricing(const std::vector<int>& sigma, int w_max);
/// The two per-patience values; top=true selects the higher one.
Rational adversarial_step_value(int w_max, int step, bool top);

/// A set of buyer types revenue-shattered at scale gamma: point i is
/// (2*gamma + (w_max-i)*alpha, i) with witness gamma + (w_max-i)*alpha, and
/// each sign vector gets an explicit non-increasing pricing.
struct ShatteringInstance {
  int w_max = 0;
  Rational gamma;
  Rational alpha;
  std::vector<BuyerType> points;
  std::vector<Rational> witness;
  std::vector<PurePricing> pricing_for;  // indexed by sign mask; bit i-1 set means sigma_i = +1
};

ShatteringInstance shattering_witness(int w_max, const Rational& gamma, const Rational& alpha);

/// Exact check of the shattering inequalities for every sign vector and
/// every point.
bool verify_shattering(const ShatteringInstance& instance);

}  // namespace patient_pricing
