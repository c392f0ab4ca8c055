#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "patient_pricing/buyer.hpp"
#include "patient_pricing/errors.hpp"
#include "patient_pricing/oracle.hpp"
#include "patient_pricing/sampling.hpp"
#include "test_support.hpp"

using namespace patient_pricing;
using test_support::R;
using test_support::pricing;

TEST_CASE("pure best response on the demo pricing") {
  const PurePricing p = pricing({"1", "2/3", "1/3"});

  const auto patient = pure_best_response(p, {R("1/3"), 3});
  REQUIRE(patient.has_value());
  CHECK(patient->step == 3);
  CHECK(patient->price == R("1/3"));

  // Indifferent at the first step: v - p = 0 and waiting is worthless.
  const auto impatient = pure_best_response(p, {R("1"), 1});
  REQUIRE(impatient.has_value());
  CHECK(impatient->step == 1);
  CHECK(impatient->price == R("1"));

  CHECK_FALSE(pure_best_response(pricing({"1/2"}), {R("1/4"), 1}).has_value());
  CHECK_THROWS_AS(pure_best_response(pricing({"1/2"}), BuyerType{R("1"), 2}), ValidationError);
}

TEST_CASE("non-increasing pricings sell at the patience boundary price") {
  const PurePricing p = pricing({"1", "2/3", "1/3"});
  for (int w = 1; w <= 3; ++w) {
    for (int v8 = 0; v8 <= 8; ++v8) {
      const BuyerType z{Rational(v8, 8), w};
      const auto outcome = pure_best_response(p, z);
      if (z.value >= p.at(w)) {
        REQUIRE(outcome.has_value());
        CHECK(outcome->price == p.at(w));
      } else {
        CHECK_FALSE(outcome.has_value());
      }
    }
  }
}

TEST_CASE("partial utilities of the demo mixture") {
  const MixedPricing P = test_support::demo_two_mixture();

  const auto high = partial_utilities(P, {R("1"), 2});
  CHECK(high.at({R("2/3")}) == R("2/9"));
  CHECK(high.at({}) == R("1/3"));  // buys immediately at 2/3

  const auto low = partial_utilities(P, {R("1/3"), 2});
  CHECK(low.at({R("2/3")}) == 0);

  // Patience expired: empty continuation value everywhere past step w.
  const auto impatient = partial_utilities(P, {R("1"), 1});
  CHECK(impatient.at({R("2/3")}) == 0);

  const auto point = partial_utilities(MixedPricing::point_mass(pricing({"1/2", "1/2"})),
                                       {R("1"), 2});
  CHECK(point.at({}) == R("1/2"));

  CHECK_THROWS_AS(partial_utilities(P, BuyerType{R("1"), 3}), ValidationError);
}

TEST_CASE("thresholds of the demo mixture") {
  const MixedPricing P = test_support::demo_two_mixture();

  const auto eager = best_response_thresholds(P, {R("1"), 2});
  CHECK(eager.thresholds.at({R("2/3")}) == R("7/9"));  // 1 - 2/9, buys at step one
  const auto bought = eager.apply(pricing({"2/3", "1"}));
  REQUIRE(bought.has_value());
  CHECK(bought->step == 1);

  const auto reluctant = best_response_thresholds(P, {R("1/3"), 2});
  CHECK(reluctant.thresholds.at({R("2/3")}) == R("1/3"));  // waits at 2/3
  const auto waited = reluctant.apply(pricing({"2/3", "1/3"}));
  REQUIRE(waited.has_value());
  CHECK(waited->step == 2);
  CHECK(waited->price == R("1/3"));

  // At the final step of the patience window the threshold is the value.
  for (const auto& [history, threshold] : reluctant.thresholds) {
    if (history.size() == 2) CHECK(threshold == R("1/3"));
  }
}

TEST_CASE("simulate purchase on the demo mixture") {
  const MixedPricing P = test_support::demo_two_mixture();
  const auto bought = simulate_purchase(P, {R("1/3"), 2}, pricing({"2/3", "1/3"}));
  REQUIRE(bought.has_value());
  CHECK(bought->step == 2);
  CHECK(bought->price == R("1/3"));
  CHECK_FALSE(simulate_purchase(P, {R("1/3"), 2}, pricing({"2/3", "1"})).has_value());
  CHECK_FALSE(simulate_purchase(P, {R("0"), 2}, pricing({"2/3", "1"})).has_value());
  CHECK_THROWS_AS(simulate_purchase(P, BuyerType{R("1/3"), 2}, pricing({"1", "1"})),
                  ValidationError);
}

TEST_CASE("threshold policy matches exhaustive stopping rules") {
  auto rng = make_stream(41);
  for (int round = 0; round < 40; ++round) {
    const int w_max = 2 + static_cast<int>(rng() % 2);
    const auto P = oracle::random_small_mixed(rng, w_max);
    const BuyerType z{Rational(static_cast<long>(rng() % 9), 8),
                      1 + static_cast<int>(rng() % static_cast<std::uint64_t>(w_max))};
    CHECK(best_response_utility(P, z) == oracle::brute_force_buyer(P, z));
  }
}

TEST_CASE("thresholds grow with value and shrink with patience") {
  auto rng = make_stream(43);
  for (int round = 0; round < 25; ++round) {
    const int w_max = 2 + static_cast<int>(rng() % 2);
    const auto P = oracle::random_small_mixed(rng, w_max);
    const int w_low = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(w_max));
    const int w_high = w_low + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                   w_max - w_low + 1));
    const long v8 = static_cast<long>(rng() % 8);
    const BuyerType weaker{Rational(v8, 8), w_high};
    const BuyerType stronger{Rational(v8 + 1, 8), w_low};
    const auto theta_weak = best_response_thresholds(P, weaker);
    const auto theta_strong = best_response_thresholds(P, stronger);
    for (const auto& [history, threshold] : theta_weak.thresholds) {
      CHECK(theta_strong.thresholds.at(history) >= threshold);
    }
  }
}

TEST_CASE("utilities are non-negative everywhere") {
  auto rng = make_stream(47);
  for (int round = 0; round < 25; ++round) {
    const auto P = oracle::random_small_mixed(rng, 2 + static_cast<int>(rng() % 2));
    const BuyerType z{Rational(static_cast<long>(rng() % 9), 8),
                      1 + static_cast<int>(rng() % static_cast<std::uint64_t>(P.length()))};
    for (const auto& [history, u] : partial_utilities(P, z)) {
      CHECK(u >= 0);
    }
  }
}
