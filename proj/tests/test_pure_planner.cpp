#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "patient_pricing/errors.hpp"
#include "patient_pricing/oracle.hpp"
#include "patient_pricing/pure_planner.hpp"
#include "patient_pricing/revenue.hpp"
#include "patient_pricing/sampling.hpp"
#include "test_support.hpp"

#include <algorithm>

using namespace patient_pricing;
using test_support::R;
using test_support::pricing;

TEST_CASE("demo-one plan is the full-surplus pricing") {
  const auto plan = plan_pure(test_support::demo_one());
  CHECK(plan.pricing == pricing({"1", "2/3", "1/3"}));
  CHECK(plan.revenue == R("2/3"));
}

TEST_CASE("demo-two plan earns 4/9 with a non-increasing pricing") {
  const auto plan = plan_pure(test_support::demo_two());
  CHECK(plan.revenue == R("4/9"));
  CHECK(plan.pricing.non_increasing());
}

TEST_CASE("point mass plans the value at the patience step") {
  const FiniteDistribution point(3, {{BuyerType{R("5/8"), 2}, R("1")}});
  const auto plan = plan_pure(point);
  CHECK(plan.revenue == R("5/8"));
  CHECK(plan.pricing.at(2) == R("5/8"));
}

TEST_CASE("plans are non-increasing, in-support, and fixed-price dominant") {
  auto rng = make_stream(67);
  for (int round = 0; round < 50; ++round) {
    const auto dist = oracle::random_small_distribution(rng);
    const auto plan = plan_pure(dist);
    CHECK(plan.pricing.non_increasing());
    const auto& values = dist.value_support();
    for (const Rational& p : plan.pricing.prices()) {
      CHECK(std::binary_search(values.begin(), values.end(), p));
    }
    CHECK(plan.revenue == revenue_pure(plan.pricing, dist));
    CHECK(plan.revenue >= best_fixed_price(dist).second);
  }
}

TEST_CASE("planner matches exhaustive enumeration") {
  auto rng = make_stream(71);
  for (int round = 0; round < 60; ++round) {
    const auto dist = oracle::random_small_distribution(rng);
    CHECK(plan_pure(dist).revenue == oracle::brute_force_pure(dist).revenue);
  }
  for (int round = 0; round < 20; ++round) {  // deeper patience windows
    const auto dist = oracle::random_small_distribution(rng, 4, 4);
    CHECK(plan_pure(dist).revenue == oracle::brute_force_pure(dist).revenue);
  }
}

TEST_CASE("table size is one cell per step and candidate price") {
  const auto dist = test_support::demo_one();
  PureDpStats stats;
  plan_pure(dist, &stats);
  const std::size_t n = dist.value_support().size();
  const std::size_t w = static_cast<std::size_t>(dist.w_max());
  CHECK(stats.cells == n * w);
  CHECK(stats.comparisons <= n * n * w);
}

TEST_CASE("price grids") {
  CHECK(price_grid(R("1/3")) == std::vector<Rational>{R("0"), R("1/3"), R("2/3"), R("1")});
  CHECK(price_grid(R("1")) == std::vector<Rational>{R("0"), R("1")});
  // Non-divisor steps keep the endpoint.
  CHECK(price_grid(R("2/5")) == std::vector<Rational>{R("0"), R("2/5"), R("4/5"), R("1")});
  CHECK_THROWS_AS(price_grid(R("0")), ValidationError);
  CHECK_THROWS_AS(price_grid(R("3/2")), ValidationError);
}

TEST_CASE("grid planning on demo-one with a covering grid is exact") {
  const auto plan = plan_pure_discretized(test_support::demo_one(), R("1/3"));
  CHECK(plan.revenue == R("2/3"));
}

TEST_CASE("coarse grids lose at most the grid step") {
  const auto distributions = {test_support::demo_one(), test_support::demo_two()};
  for (const auto& dist : distributions) {
    const Rational exact = plan_pure(dist).revenue;
    for (const Rational& eps : {R("1"), R("1/2"), R("1/3"), R("1/6")}) {
      const auto plan = plan_pure_discretized(dist, eps);
      CHECK(plan.revenue >= exact - eps);
      CHECK(plan.revenue <= exact);
    }
  }
}

TEST_CASE("grid bound holds on random instances") {
  auto rng = make_stream(73);
  for (int round = 0; round < 25; ++round) {
    const auto dist = oracle::random_small_distribution(rng);
    const Rational exact = plan_pure(dist).revenue;
    CHECK(plan_pure_discretized(dist, R("1/6")).revenue >= exact - R("1/6"));
  }
}
