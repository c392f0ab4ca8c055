#pragma once

#include "patient_pricing/mixed_planner.hpp"
#include "patient_pricing/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace patient_pricing {

enum class OnlineMode { pure, mixed };

struct RegretTrace {
  OnlineMode mode = OnlineMode::pure;
  std::uint64_t seed = 0;
  int T = 0;
  Rational benchmark_revenue;         // planner optimum for the mode
  std::vector<Rational> instant;      // expected per-round regret, exact
  std::vector<Rational> cumulative;   // prefix sums
  std::vector<int> epoch_of_round;    // which held strategy served each round
  int erm_calls = 0;
};

/// Doubling-epoch online seller: the held strategy starts as the all-ones
/// pricing (a documented fixed choice with no data) and is replaced by the
/// ERM on all observed types at every round that is a power of two. The
/// buyer type is revealed after each round. Instantaneous regret is the
/// exact expected shortfall against the planner optimum, so traces are
/// variance-free given the sampled types.
RegretTrace run_online(const FiniteDistribution& dist, int T, OnlineMode mode, std::uint64_t seed,
                       const std::vector<Rational>& alphabet = {},
                       const MixedPlannerOptions& options = {});

std::vector<RegretTrace> run_online_many(const FiniteDistribution& dist, int T, OnlineMode mode,
                                         const std::vector<std::uint64_t>& seeds,
                                         const std::vector<Rational>& alphabet = {},
                                         int threads = 0, const MixedPlannerOptions& options = {});

struct RegretSummary {
  OnlineMode mode = OnlineMode::pure;
  int T = 0;
  int traces = 0;
  std::vector<int> checkpoints;          // powers of two up to T
  std::vector<double> mean_cumulative;   // per checkpoint
  std::vector<double> std_cumulative;
  std::optional<double> loglog_slope;    // empty means the curve is flat at zero
};

/// Checkpoint means/deviations across traces sharing T and mode, plus the
/// fitted log-log slope of mean cumulative regret against T.
RegretSummary regret_summary(const std::vector<RegretTrace>& traces);

/// Least-squares slope of log(mean) against log(t), over positive means.
/// Empty when fewer than two positive points remain.
std::optional<double> fitted_loglog_slope(const std::vector<int>& ts,
                                          const std::vector<double>& means);

}  // namespace patient_pricing
