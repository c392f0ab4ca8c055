#include "patient_pricing/learning.hpp"
#include "patient_pricing/lp.hpp"
#include "patient_pricing/online.hpp"
#include "patient_pricing/mixed_planner.hpp"
#include "patient_pricing/oracle.hpp"
#include "patient_pricing/pure_planner.hpp"
#include "patient_pricing/revenue.hpp"
#include "patient_pricing/sampling.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace patient_pricing;

Rational R(const char* text) { return parse_rational(text); }

FiniteDistribution demo_two() {
  return FiniteDistribution(2, {{BuyerType{R("1/3"), 2}, R("1/3")},
                                {BuyerType{R("2/3"), 1}, R("1/3")},
                                {BuyerType{R("1"), 2}, R("1/3")}});
}

void BM_PlanPure(benchmark::State& state) {
  auto rng = make_stream(7);
  const auto dist = oracle::random_small_distribution(rng, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    auto plan = plan_pure(dist);
    benchmark::DoNotOptimize(plan.revenue);
  }
}
BENCHMARK(BM_PlanPure)->Arg(2)->Arg(4);

void BM_PlanPureGrid(benchmark::State& state) {
  const auto dist = demo_two();
  const Rational eps(1, state.range(0));
  for (auto _ : state) {
    auto plan = plan_pure_discretized(dist, eps);
    benchmark::DoNotOptimize(plan.revenue);
  }
}
BENCHMARK(BM_PlanPureGrid)->Arg(8)->Arg(64)->Arg(256);

void BM_PlanMixed(benchmark::State& state) {
  const auto dist = demo_two();
  const std::vector<Rational> alphabet{R("1/3"), R("2/3"), R("1")};
  for (auto _ : state) {
    auto plan = plan_mixed(dist, alphabet);
    benchmark::DoNotOptimize(plan.revenue);
  }
}
BENCHMARK(BM_PlanMixed);

void BM_SolvePricingLp(benchmark::State& state) {
  LpInstance instance;
  instance.objective = {R("1/9"), R("0"), R("0")};
  instance.rows.push_back({{R("2/3"), R("1/3"), R("0")}, R("1/3"), false});
  for (auto _ : state) {
    auto result = solve_pricing_lp(instance);
    benchmark::DoNotOptimize(result.value);
  }
}
BENCHMARK(BM_SolvePricingLp);

void BM_RevenueMixed(benchmark::State& state) {
  const auto dist = demo_two();
  const MixedPricing P({R("1/3"), R("2/3"), R("1")},
                       {{PurePricing({R("2/3"), R("1/3")}), R("1/3")},
                        {PurePricing({R("2/3"), R("1")}), R("2/3")}});
  for (auto _ : state) {
    auto revenue = revenue_mixed(P, dist);
    benchmark::DoNotOptimize(revenue);
  }
}
BENCHMARK(BM_RevenueMixed);

void BM_OnlineRun(benchmark::State& state) {
  const auto dist = demo_two();
  for (auto _ : state) {
    auto trace = run_online(dist, static_cast<int>(state.range(0)), OnlineMode::pure, 1);
    benchmark::DoNotOptimize(trace.cumulative.back());
  }
}
BENCHMARK(BM_OnlineRun)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
