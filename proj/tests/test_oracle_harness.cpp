#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "patient_pricing/errors.hpp"
#include "patient_pricing/oracle.hpp"
#include "patient_pricing/revenue.hpp"
#include "patient_pricing/sampling.hpp"
#include "test_support.hpp"

using namespace patient_pricing;
using test_support::R;
using test_support::pricing;

TEST_CASE("pure enumeration on the demo distributions") {
  CHECK(oracle::brute_force_pure(test_support::demo_one()).revenue == R("2/3"));
  CHECK(oracle::brute_force_pure(test_support::demo_two()).revenue == R("4/9"));
  const FiniteDistribution point(2, {{BuyerType{R("5/8"), 2}, R("1")}});
  CHECK(oracle::brute_force_pure(point).revenue == R("5/8"));
}

TEST_CASE("pure enumeration honors its budget") {
  std::vector<std::pair<BuyerType, Rational>> wide;
  for (long i = 0; i <= 8; ++i) wide.push_back({BuyerType{Rational(i, 8), 7}, Rational(1, 9)});
  const FiniteDistribution dist(7, std::move(wide));  // 9^7 > 1e6
  CHECK_THROWS_AS(oracle::brute_force_pure(dist), BudgetError);
}

TEST_CASE("stopping-rule enumeration on the demo mixture") {
  const auto P = test_support::demo_two_mixture();
  CHECK(oracle::brute_force_buyer(P, {R("1"), 2}) == R("1/3"));
  CHECK(oracle::brute_force_buyer(P, {R("0"), 2}) == 0);
  CHECK(oracle::brute_force_buyer(MixedPricing::point_mass(pricing({"1/2", "1/4"})),
                                  {R("1"), 2}) == R("3/4"));
}

TEST_CASE("stopping-rule enumeration honors its budgets") {
  const auto P = test_support::demo_two_mixture();
  oracle::BruteForceLimits limits;
  limits.buyer_history_budget = 1;
  CHECK_THROWS_AS(oracle::brute_force_buyer(P, BuyerType{R("1"), 2}, limits), BudgetError);
  limits = {};
  limits.buyer_rule_budget = 1;
  CHECK_THROWS_AS(oracle::brute_force_buyer(P, BuyerType{R("1"), 2}, limits), BudgetError);
}

TEST_CASE("mixture grid search on the demo distribution") {
  const auto dist = test_support::demo_two();
  const auto alphabet = test_support::demo_alphabet();

  const auto coarse = oracle::brute_force_mixed(dist, alphabet, 2, 6);
  CHECK(coarse.revenue >= R("13/27"));

  const auto pure_only = oracle::brute_force_mixed(dist, alphabet, 1, 6);
  CHECK(pure_only.revenue == R("4/9"));

  const auto fine = oracle::brute_force_mixed(dist, alphabet, 2, 24);
  CHECK(fine.revenue == R("1/2"));
  CHECK(revenue_mixed(fine.strategy, dist) == R("1/2"));
}

TEST_CASE("mixture search rejects oversized instances") {
  const auto dist = test_support::demo_two();
  const auto alphabet = test_support::demo_alphabet();
  CHECK_THROWS_AS(oracle::brute_force_mixed(dist, alphabet, 4, 6), BudgetError);
  CHECK_THROWS_AS(oracle::brute_force_mixed(dist, alphabet, 2, 25), BudgetError);
  const FiniteDistribution deep(3, {{BuyerType{R("1/2"), 3}, R("1")}});
  CHECK_THROWS_AS(oracle::brute_force_mixed(deep, alphabet, 2, 6), BudgetError);
  std::vector<Rational> four{R("1/8"), R("1/4"), R("1/2"), R("1")};
  CHECK_THROWS_AS(oracle::brute_force_mixed(dist, four, 2, 6), BudgetError);
}

TEST_CASE("random generators produce valid small instances") {
  auto rng = make_stream(103);
  for (int round = 0; round < 30; ++round) {
    const auto dist = oracle::random_small_distribution(rng);
    CHECK(dist.w_max() <= 3);
    CHECK(dist.value_support().size() <= 4);
    const auto mixed = oracle::random_small_mixed(rng, dist.w_max());
    CHECK(mixed.length() == dist.w_max());
    CHECK(mixed.support().size() <= 4);
  }
}
