#include "patient_pricing/online.hpp"

#include "patient_pricing/errors.hpp"
#include "patient_pricing/learning.hpp"
#include "patient_pricing/pure_planner.hpp"
#include "patient_pricing/revenue.hpp"
#include "patient_pricing/sampling.hpp"
#include "parallel.hpp"

#include <cmath>

namespace patient_pricing {

namespace {

bool power_of_two(int t) { return t > 0 && (t & (t - 1)) == 0; }

}  // namespace

RegretTrace run_online(const FiniteDistribution& dist, int T, OnlineMode mode, std::uint64_t seed,
                       const std::vector<Rational>& alphabet, const MixedPlannerOptions& options) {
  if (T < 1) throw ValidationError("T must be at least 1");
  if (mode == OnlineMode::mixed && alphabet.empty()) {
    throw ValidationError("mixed mode needs a price alphabet");
  }

  RegretTrace trace;
  trace.mode = mode;
  trace.seed = seed;
  trace.T = T;
  trace.benchmark_revenue = mode == OnlineMode::pure
                                ? plan_pure(dist).revenue
                                : plan_mixed(dist, alphabet, options).revenue;

  const PurePricing all_ones = PurePricing::fixed(Rational(1), dist.w_max());
  Rational held_revenue = mode == OnlineMode::pure
                              ? revenue_pure(all_ones, dist)
                              : revenue_mixed(MixedPricing::point_mass(all_ones), dist);
  trace.erm_calls = 1;  // the round-1 strategy counts as the first epoch

  auto rng = make_stream(seed);
  TypeSampler sampler(dist);
  std::vector<BuyerType> history;
  history.reserve(static_cast<std::size_t>(T));

  int epoch = 0;
  Rational running = 0;
  for (int t = 1; t <= T; ++t) {
    if (t > 1 && power_of_two(t)) {
      if (mode == OnlineMode::pure) {
        held_revenue = revenue_pure(erm_pure(history, dist.w_max()), dist);
      } else {
        held_revenue =
            revenue_mixed(erm_mixed(history, dist.w_max(), alphabet, options), dist);
      }
      ++trace.erm_calls;
      ++epoch;
    }
    Rational instant = trace.benchmark_revenue - held_revenue;
    running += instant;
    trace.instant.push_back(std::move(instant));
    trace.cumulative.push_back(running);
    trace.epoch_of_round.push_back(epoch);
    history.push_back(sampler(rng));  // type observed only after the round
  }
  return trace;
}

std::vector<RegretTrace> run_online_many(const FiniteDistribution& dist, int T, OnlineMode mode,
                                         const std::vector<std::uint64_t>& seeds,
                                         const std::vector<Rational>& alphabet, int threads,
                                         const MixedPlannerOptions& options) {
  std::vector<RegretTrace> traces(seeds.size());
  detail::parallel_for(seeds.size(), threads, [&](std::size_t i) {
    traces[i] = run_online(dist, T, mode, seeds[i], alphabet, options);
  });
  return traces;
}

RegretSummary regret_summary(const std::vector<RegretTrace>& traces) {
  if (traces.empty()) throw ValidationError("no traces to summarize");
  RegretSummary summary;
  summary.mode = traces.front().mode;
  summary.T = traces.front().T;
  summary.traces = static_cast<int>(traces.size());
  for (const RegretTrace& trace : traces) {
    if (trace.T != summary.T || trace.mode != summary.mode) {
      throw ValidationError("traces disagree on T or mode");
    }
  }
  for (int t = 1; t <= summary.T; t *= 2) summary.checkpoints.push_back(t);

  for (int checkpoint : summary.checkpoints) {
    double mean = 0;
    for (const RegretTrace& trace : traces) {
      mean += to_double(trace.cumulative[static_cast<std::size_t>(checkpoint - 1)]);
    }
    mean /= static_cast<double>(traces.size());
    double ss = 0;
    for (const RegretTrace& trace : traces) {
      const double d =
          to_double(trace.cumulative[static_cast<std::size_t>(checkpoint - 1)]) - mean;
      ss += d * d;
    }
    summary.mean_cumulative.push_back(mean);
    summary.std_cumulative.push_back(
        traces.size() > 1 ? std::sqrt(ss / static_cast<double>(traces.size() - 1)) : 0.0);
  }
  summary.loglog_slope = fitted_loglog_slope(summary.checkpoints, summary.mean_cumulative);
  return summary;
}

std::optional<double> fitted_loglog_slope(const std::vector<int>& ts,
                                          const std::vector<double>& means) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ts.size() && i < means.size(); ++i) {
    if (means[i] > 0) {
      xs.push_back(std::log(static_cast<double>(ts[i])));
      ys.push_back(std::log(means[i]));
    }
  }
  if (xs.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  if (den == 0) return std::nullopt;
  return num / den;
}

}  // namespace patient_pricing
