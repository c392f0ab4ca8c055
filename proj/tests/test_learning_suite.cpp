#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "patient_pricing/errors.hpp"
#include "patient_pricing/learning.hpp"
#include "patient_pricing/pure_planner.hpp"
#include "patient_pricing/revenue.hpp"
#include "patient_pricing/sampling.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>

using namespace patient_pricing;
using test_support::R;
using test_support::pricing;

namespace {

std::vector<BuyerType> demo_one_sample() {
  return {{R("1/3"), 3}, {R("2/3"), 2}, {R("1"), 1}};
}

std::vector<BuyerType> demo_two_sample() {
  return {{R("1/3"), 2}, {R("2/3"), 1}, {R("1"), 2}};
}

}  // namespace

TEST_CASE("pure ERM on the demo samples") {
  CHECK(erm_pure(demo_one_sample(), 3) == pricing({"1", "2/3", "1/3"}));
  CHECK(empirical_revenue(erm_pure(demo_two_sample(), 2), demo_two_sample()) == R("4/9"));
  const std::vector<BuyerType> repeated(5, BuyerType{R("5/8"), 1});
  CHECK(erm_pure(repeated, 1) == pricing({"5/8"}));
}

TEST_CASE("pure ERM prices come from the sample, non-increasing") {
  auto rng = make_stream(113);
  for (int round = 0; round < 30; ++round) {
    std::vector<BuyerType> sample;
    const int w_max = 1 + static_cast<int>(rng() % 3);
    const std::size_t m = 1 + rng() % 12;
    for (std::size_t i = 0; i < m; ++i) {
      sample.push_back({Rational(static_cast<long>(rng() % 9), 8),
                        1 + static_cast<int>(rng() % static_cast<std::uint64_t>(w_max))});
    }
    const auto plan = erm_pure(sample, w_max);
    CHECK(plan.non_increasing());
    for (const Rational& p : plan.prices()) {
      bool seen = false;
      for (const BuyerType& z : sample) seen = seen || z.value == p;
      CHECK(seen);
    }
  }
}

TEST_CASE("grid ERM keeps the promised empirical revenue") {
  const auto sample = demo_one_sample();
  CHECK(empirical_revenue(erm_pure_discretized(sample, 3, 3), sample) == R("2/3"));

  const auto binary = erm_pure_discretized(sample, 3, 1);
  for (const Rational& p : binary.prices()) {
    CHECK((p == 0 || p == 1));
  }

  const auto two = demo_two_sample();
  const Rational exact = empirical_revenue(erm_pure(two, 2), two);
  CHECK(empirical_revenue(erm_pure_discretized(two, 2, 2), two) >= exact - R("1/2"));
  CHECK_THROWS_AS(erm_pure_discretized(two, 2, 0), ValidationError);
}

TEST_CASE("mixed ERM on the demo sample") {
  const auto alphabet = test_support::demo_alphabet();
  const auto strategy = erm_mixed(demo_two_sample(), 2, alphabet);
  CHECK(empirical_revenue(strategy, demo_two_sample()) >= R("13/27"));

  const std::vector<BuyerType> single(3, BuyerType{R("5/8"), 1});
  const auto point = erm_mixed(single, 1, {R("1/4"), R("5/8")});
  CHECK(point.support().size() == 1);
  CHECK(point.support().front().first == pricing({"5/8"}));

  std::vector<BuyerType> tripled;
  for (int copy = 0; copy < 3; ++copy) {
    for (const BuyerType& z : demo_two_sample()) tripled.push_back(z);
  }
  CHECK(erm_mixed(tripled, 2, alphabet) == strategy);
}

TEST_CASE("learning curves shrink and hit zero once the support is seen") {
  const auto curve = learning_curve(test_support::demo_one(), LearningMode::pure(),
                                    {9, 36, 144}, 30, 7);
  REQUIRE(curve.size() == 3);
  for (const auto& point : curve) {
    for (const Rational& gap : point.gaps) CHECK(gap >= 0);
  }
  // Monotone up to Monte-Carlo noise: two standard errors of the difference.
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double slack = 2 * std::sqrt(curve[i].std_error * curve[i].std_error +
                                       curve[i + 1].std_error * curve[i + 1].std_error);
    CHECK(to_double(curve[i + 1].mean_gap) <= to_double(curve[i].mean_gap) + slack);
  }
  // At m = 144 every type appears in essentially every trial, and any sample
  // containing all three types plans the full-surplus pricing exactly.
  int zero = 0;
  for (const Rational& gap : curve.back().gaps) zero += gap == 0 ? 1 : 0;
  CHECK(zero >= 27);
}

TEST_CASE("tiny samples on the adversarial family leave a large gap") {
  // With far fewer draws than patience levels need, most steps are priced
  // without ever seeing that patience's values, losing well above eps/2 on
  // average. Deterministic: the per-(m, trial) streams are seed-derived.
  const Rational eps = R("1/16");
  for (int w_max : {2, 3}) {
    std::vector<int> sigma;
    for (int i = 0; i < w_max; ++i) sigma.push_back(i % 2 == 0 ? 1 : -1);
    const auto dist = adversarial_distribution(sigma, w_max, eps);
    const auto curve = learning_curve(dist, LearningMode::pure(), {1}, 60, 7);
    CHECK(curve.front().mean_gap >= eps / 2);
  }
  const auto dist = adversarial_distribution({1, -1, 1}, 3, eps);
  const auto curve = learning_curve(dist, LearningMode::pure(), {2}, 60, 7);
  CHECK(curve.front().mean_gap >= eps / 2);
}

TEST_CASE("a one-point type space is learned from a single draw") {
  const FiniteDistribution point(2, {{BuyerType{R("3/4"), 2}, R("1")}});
  const auto curve = learning_curve(point, LearningMode::pure(), {1}, 5, 11);
  for (const Rational& gap : curve.front().gaps) CHECK(gap == 0);
}

TEST_CASE("learning curve rejects bad arguments") {
  const auto dist = test_support::demo_one();
  CHECK_THROWS_AS(learning_curve(dist, LearningMode::pure(), {}, 3, 1), ValidationError);
  CHECK_THROWS_AS(learning_curve(dist, LearningMode::pure(), {4, 2}, 3, 1), ValidationError);
  CHECK_THROWS_AS(learning_curve(dist, LearningMode::pure(), {2, 4}, 0, 1), ValidationError);
  CHECK_THROWS_AS(learning_curve(dist, LearningMode::pure_grid(0), {2}, 1, 1), ValidationError);
}

TEST_CASE("adversarial family values and probabilities") {
  CHECK(adversarial_step_value(2, 1, true) == R("1/2"));
  CHECK(adversarial_step_value(2, 1, false) == R("1/4"));
  CHECK(adversarial_step_value(2, 2, true) == R("1/8"));
  CHECK(adversarial_step_value(2, 2, false) == R("1/16"));

  const auto dist = adversarial_distribution({1, 1}, 2, R("1/16"));
  Rational total = 0;
  for (const auto& [type, prob] : dist.support()) total += prob;
  CHECK(total == 1);
  CHECK(dist.support().size() == 4);

  CHECK_THROWS_AS(adversarial_distribution({1, 1}, 2, R("16")), ValidationError);
  CHECK_THROWS_AS(adversarial_distribution({1}, 2, R("1/16")), ValidationError);
  CHECK_THROWS_AS(adversarial_distribution({1, 2}, 2, R("1/16")), ValidationError);
}

TEST_CASE("planning recovers the adversarial family's optimal pricing") {
  auto rng = make_stream(101);
  for (int w_max = 2; w_max <= 3; ++w_max) {
    for (int round = 0; round < 4; ++round) {
      std::vector<int> sigma;
      for (int i = 0; i < w_max; ++i) sigma.push_back(rng() % 2 == 0 ? 1 : -1);
      const auto dist = adversarial_distribution(sigma, w_max, R("1/16"));
      const auto plan = plan_pure(dist);
      const auto bayes = adversarial_bayes_pricing(sigma, w_max);
      CHECK(plan.pricing == bayes);

      // Swapping one step to the other candidate price costs exactly the
      // tilt times the low value, averaged over the uniform patience.
      const Rational tilt = R("1/16") / 16;
      for (int step = 1; step <= w_max; ++step) {
        std::vector<Rational> prices = bayes.prices();
        const bool top = sigma[static_cast<std::size_t>(step - 1)] > 0;
        prices[static_cast<std::size_t>(step - 1)] =
            adversarial_step_value(w_max, step, !top);
        const Rational flipped = revenue_pure(PurePricing(prices), dist);
        CHECK(plan.revenue - flipped ==
              adversarial_step_value(w_max, step, false) * tilt / w_max);
      }
    }
  }
}

TEST_CASE("shattering witness instance for two points") {
  const auto inst = shattering_witness(2, R("1/5"), R("1/10"));
  REQUIRE(inst.points.size() == 2);
  CHECK(inst.points[0] == BuyerType{R("1/2"), 1});
  CHECK(inst.points[1] == BuyerType{R("2/5"), 2});
  CHECK(inst.witness == std::vector<Rational>{R("3/10"), R("1/5")});
  CHECK(inst.pricing_for[0b11] == pricing({"1/2", "2/5"}));
  CHECK(inst.pricing_for[0b00] == pricing({"1", "1"}));
  CHECK(verify_shattering(inst));
}

TEST_CASE("all-plus pricings decrease strictly") {
  const auto inst = shattering_witness(4, R("1/8"), R("1/16"));
  const auto& all_plus = inst.pricing_for[0b1111];
  for (int i = 2; i <= 4; ++i) CHECK(all_plus.at(i) < all_plus.at(i - 1));
  CHECK(verify_shattering(inst));
}

TEST_CASE("witness sweep verifies across sizes") {
  for (int w = 2; w <= 6; ++w) {
    const Rational alpha = Rational(1, 2 * w);
    const Rational gamma = (Rational(1, 2) - Rational(w - 1) * alpha / 2) / 2;
    CHECK(verify_shattering(shattering_witness(w, gamma, alpha)));
  }
}

TEST_CASE("a perturbed witness fails verification") {
  auto inst = shattering_witness(3, R("1/8"), R("1/16"));
  inst.witness[0] += 1;
  CHECK_FALSE(verify_shattering(inst));
}

TEST_CASE("witness parameter validation") {
  CHECK_THROWS_AS(shattering_witness(1, R("1/8"), R("1/16")), ValidationError);
  CHECK_THROWS_AS(shattering_witness(3, R("1/2"), R("1/16")), ValidationError);
  CHECK_THROWS_AS(shattering_witness(3, R("1/8"), R("1/2")), ValidationError);
  CHECK_THROWS_AS(shattering_witness(3, R("0"), R("1/16")), ValidationError);
}
