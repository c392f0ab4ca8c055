#include "patient_pricing/learning.hpp"

#include "patient_pricing/errors.hpp"
#include "patient_pricing/pure_planner.hpp"
#include "patient_pricing/revenue.hpp"
#include "patient_pricing/sampling.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>

namespace patient_pricing {

PurePricing erm_pure(const std::vector<BuyerType>& sample, int w_max) {
  return plan_pure(empirical_distribution(sample, w_max)).pricing;
}

PurePricing erm_pure_discretized(const std::vector<BuyerType>& sample, int w_max, int k) {
  if (k < 1) throw ValidationError("grid resolution k must be at least 1");
  return plan_pure_discretized(empirical_distribution(sample, w_max), Rational(1, k)).pricing;
}

MixedPricing erm_mixed(const std::vector<BuyerType>& sample, int w_max,
                       std::vector<Rational> alphabet, const MixedPlannerOptions& options) {
  return plan_mixed(empirical_distribution(sample, w_max), std::move(alphabet), options).strategy;
}

std::vector<LearningCurvePoint> learning_curve(const FiniteDistribution& dist,
                                               const LearningMode& mode,
                                               const std::vector<std::size_t>& m_values,
                                               int trials, std::uint64_t seed, int threads,
                                               const MixedPlannerOptions& options) {
  if (m_values.empty()) throw ValidationError("no sample sizes given");
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    if (m_values[i] == 0) throw ValidationError("sample sizes must be positive");
    if (i > 0 && m_values[i] <= m_values[i - 1]) {
      throw ValidationError("sample sizes must be strictly ascending");
    }
  }
  if (trials < 1) throw ValidationError("trials must be at least 1");
  if (mode.kind == LearningMode::Kind::pure_grid && mode.grid_k < 1) {
    throw ValidationError("grid resolution k must be at least 1");
  }

  Rational benchmark;
  switch (mode.kind) {
    case LearningMode::Kind::pure:
      benchmark = plan_pure(dist).revenue;
      break;
    case LearningMode::Kind::pure_grid:
      benchmark = plan_pure_discretized(dist, Rational(1, mode.grid_k)).revenue;
      break;
    case LearningMode::Kind::mixed:
      benchmark = plan_mixed(dist, mode.alphabet, options).revenue;
      break;
  }

  const std::size_t tasks = m_values.size() * static_cast<std::size_t>(trials);
  std::vector<Rational> gaps(tasks);
  detail::parallel_for(tasks, threads, [&](std::size_t task) {
    const std::size_t m = m_values[task / static_cast<std::size_t>(trials)];
    const std::size_t trial = task % static_cast<std::size_t>(trials);
    auto rng = make_stream(seed, m, trial);
    std::vector<BuyerType> sample = sample_types(dist, m, rng);
    Rational achieved;
    switch (mode.kind) {
      case LearningMode::Kind::pure:
        achieved = revenue_pure(erm_pure(sample, dist.w_max()), dist);
        break;
      case LearningMode::Kind::pure_grid:
        achieved = revenue_pure(erm_pure_discretized(sample, dist.w_max(), mode.grid_k), dist);
        break;
      case LearningMode::Kind::mixed:
        achieved = revenue_mixed(erm_mixed(sample, dist.w_max(), mode.alphabet, options), dist);
        break;
    }
    gaps[task] = benchmark - achieved;
  });

  std::vector<LearningCurvePoint> curve;
  curve.reserve(m_values.size());
  for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
    LearningCurvePoint point;
    point.m = m_values[mi];
    point.trials = trials;
    point.gaps.assign(gaps.begin() + static_cast<std::ptrdiff_t>(mi * trials),
                      gaps.begin() + static_cast<std::ptrdiff_t>((mi + 1) * trials));
    Rational total = 0;
    for (const Rational& g : point.gaps) total += g;
    point.mean_gap = total / trials;
    if (trials > 1) {
      const double mean = to_double(point.mean_gap);
      double ss = 0;
      for (const Rational& g : point.gaps) {
        const double d = to_double(g) - mean;
        ss += d * d;
      }
      point.std_error = std::sqrt(ss / (trials - 1)) / std::sqrt(static_cast<double>(trials));
    }
    curve.push_back(std::move(point));
  }
  return curve;
}

namespace {

Rational rational_pow(const Rational& base, int exponent) {
  Rational out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

void check_sigma(const std::vector<int>& sigma, int w_max) {
  if (static_cast<int>(sigma.size()) != w_max) {
    throw ValidationError("sign vector length must equal w_max");
  }
  for (int s : sigma) {
    if (s != 1 && s != -1) throw ValidationError("sign entries must be +1 or -1");
  }
}

}  // namespace

Rational adversarial_step_value(int w_max, int step, bool top) {
  if (w_max < 2) throw ValidationError("the adversarial family needs w_max >= 2");
  if (step < 1 || step > w_max) throw ValidationError("step outside [1, w_max]");
  const Rational ratio(w_max - 1, w_max);
  return rational_pow(ratio, top ? 2 * step - 1 : 2 * step);
}

FiniteDistribution adversarial_distribution(const std::vector<int>& sigma, int w_max,
                                            const Rational& epsilon) {
  if (w_max < 2) throw ValidationError("the adversarial family needs w_max >= 2");
  check_sigma(sigma, w_max);
  if (epsilon <= 0) throw ValidationError("epsilon must be positive");

  const Rational tilt = epsilon / 16;
  const Rational ratio(w_max - 1, w_max);
  const Rational uniform(1, w_max);
  std::vector<std::pair<BuyerType, Rational>> support;
  for (int w = 1; w <= w_max; ++w) {
    const Rational high = ratio * (1 + Rational(sigma[static_cast<std::size_t>(w - 1)]) * tilt);
    const Rational low = 1 - high;
    if (high <= 0 || high >= 1 || low <= 0) {
      throw ValidationError("probability out of range; epsilon is too large for this w_max");
    }
    support.push_back({BuyerType{adversarial_step_value(w_max, w, true), w}, uniform * high});
    support.push_back({BuyerType{adversarial_step_value(w_max, w, false), w}, uniform * low});
  }
  return FiniteDistribution(w_max, std::move(support));
}

PurePricing adversarial_bayes_pricing(const std::vector<int>& sigma, int w_max) {
  if (w_max < 2) throw ValidationError("the adversarial family needs w_max >= 2");
  check_sigma(sigma, w_max);
  std::vector<Rational> prices;
  prices.reserve(static_cast<std::size_t>(w_max));
  for (int w = 1; w <= w_max; ++w) {
    prices.push_back(adversarial_step_value(w_max, w, sigma[static_cast<std::size_t>(w - 1)] > 0));
  }
  return PurePricing(std::move(prices));
}

ShatteringInstance shattering_witness(int w_max, const Rational& gamma, const Rational& alpha) {
  if (w_max < 2) throw ValidationError("shattering instances need w_max >= 2");
  if (alpha <= 0 || alpha * (w_max - 1) >= 1) {
    throw ValidationError("spacing alpha must lie in (0, 1/(w_max-1))");
  }
  if (gamma <= 0 || gamma >= Rational(1, 2) - Rational(w_max - 1) * alpha / 2) {
    throw ValidationError("scale gamma must lie in (0, 1/2 - (w_max-1)*alpha/2)");
  }

  ShatteringInstance inst;
  inst.w_max = w_max;
  inst.gamma = gamma;
  inst.alpha = alpha;
  for (int i = 1; i <= w_max; ++i) {
    inst.points.push_back(BuyerType{2 * gamma + (w_max - i) * alpha, i});
    inst.witness.push_back(gamma + (w_max - i) * alpha);
  }

  const std::size_t combos = std::size_t(1) << w_max;
  inst.pricing_for.reserve(combos);
  for (std::size_t mask = 0; mask < combos; ++mask) {
    auto plus = [&](int i) { return (mask >> (i - 1)) & 1u; };
    std::vector<Rational> prices(static_cast<std::size_t>(w_max));
    if (mask == 0) {
      std::fill(prices.begin(), prices.end(), Rational(1));
    } else {
      int prefix_end = 0;  // longest all-minus prefix
      while (prefix_end < w_max && !plus(prefix_end + 1)) ++prefix_end;
      int suffix_start = w_max + 1;  // start of the all-minus suffix
      while (suffix_start > 1 && !plus(suffix_start - 1)) --suffix_start;
      for (int i = 1; i <= w_max; ++i) {
        if (i <= prefix_end) {
          prices[static_cast<std::size_t>(i - 1)] = 1;
        } else if (i >= suffix_start) {
          prices[static_cast<std::size_t>(i - 1)] = 0;
        } else {
          int anchor = i;  // latest +1 at or before i
          while (!plus(anchor)) --anchor;
          prices[static_cast<std::size_t>(i - 1)] =
              inst.witness[static_cast<std::size_t>(anchor - 1)] + gamma;
        }
      }
    }
    inst.pricing_for.emplace_back(std::move(prices));
  }
  return inst;
}

bool verify_shattering(const ShatteringInstance& instance) {
  const std::size_t combos = std::size_t(1) << instance.w_max;
  for (std::size_t mask = 0; mask < combos; ++mask) {
    const PurePricing& pricing = instance.pricing_for[mask];
    for (int i = 1; i <= instance.w_max; ++i) {
      const Rational revenue =
          revenue_pure_single(pricing, instance.points[static_cast<std::size_t>(i - 1)]);
      const Rational& c = instance.witness[static_cast<std::size_t>(i - 1)];
      if ((mask >> (i - 1)) & 1u) {
        if (revenue < c + instance.gamma) return false;
      } else {
        if (revenue > c - instance.gamma) return false;
      }
    }
  }
  return true;
}

}  // namespace patient_pricing
