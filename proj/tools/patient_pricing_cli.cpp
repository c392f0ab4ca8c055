#include "patient_pricing/buyer.hpp"
#include "patient_pricing/errors.hpp"
#include "patient_pricing/io.hpp"
#include "patient_pricing/learning.hpp"
#include "patient_pricing/mixed_planner.hpp"
#include "patient_pricing/online.hpp"
#include "patient_pricing/oracle.hpp"
#include "patient_pricing/pure_planner.hpp"
#include "patient_pricing/revenue.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace pp = patient_pricing;

namespace {

pp::FiniteDistribution load_distribution(const std::string& path) {
  return pp::parse_distribution(pp::read_file(path), &std::cerr);
}

std::vector<pp::Rational> parse_rational_list(const std::string& text) {
  std::vector<pp::Rational> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(pp::parse_rational(item));
  }
  if (out.empty()) throw pp::ValidationError("empty rational list: '" + text + "'");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (auto range = text.find(".."); range != std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, range));
    const std::uint64_t hi = std::stoull(text.substr(range + 2));
    if (hi < lo) throw pp::ValidationError("seed range is empty: '" + text + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(std::stoull(item));
  }
  if (out.empty()) throw pp::ValidationError("empty seed list: '" + text + "'");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(std::stoull(item));
  }
  if (out.empty()) throw pp::ValidationError("empty sample-size list: '" + text + "'");
  return out;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    pp::atomic_write_file(out_path, content);
  }
}

std::string join_prices(const std::vector<pp::Rational>& prices) {
  std::string out;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (i > 0) out += ' ';
    out += pp::format_rational(prices[i]);
  }
  return out;
}

void print_pure_plan(const pp::PurePlan& plan, const std::string& out_path) {
  std::cout << "revenue " << pp::format_rational(plan.revenue) << "\n";
  std::cout << "prices " << join_prices(plan.pricing.prices()) << "\n";
  if (!out_path.empty()) pp::atomic_write_file(out_path, pp::serialize_pure_strategy(plan.pricing));
}

void print_mixed_plan(const pp::MixedPlan& plan, const std::string& out_path) {
  std::cout << "revenue " << pp::format_rational(plan.revenue) << "\n";
  std::cout << "alphabet " << join_prices(plan.strategy.alphabet()) << "\n";
  std::cout << "support " << plan.strategy.support().size() << "\n";
  for (const auto& [pricing, prob] : plan.strategy.support()) {
    std::cout << "pricing " << join_prices(pricing.prices()) << " prob "
              << pp::format_rational(prob) << "\n";
  }
  if (!out_path.empty()) {
    pp::atomic_write_file(out_path, pp::serialize_mixed_strategy(plan.strategy));
  }
}

pp::FiniteDistribution demo_distribution_one() {
  return pp::FiniteDistribution(
      3, {{pp::BuyerType{pp::Rational(1, 3), 3}, pp::Rational(1, 3)},
          {pp::BuyerType{pp::Rational(2, 3), 2}, pp::Rational(1, 3)},
          {pp::BuyerType{pp::Rational(1), 1}, pp::Rational(1, 3)}});
}

pp::FiniteDistribution demo_distribution_two() {
  return pp::FiniteDistribution(
      2, {{pp::BuyerType{pp::Rational(1, 3), 2}, pp::Rational(1, 3)},
          {pp::BuyerType{pp::Rational(2, 3), 1}, pp::Rational(1, 3)},
          {pp::BuyerType{pp::Rational(1), 2}, pp::Rational(1, 3)}});
}

void run_separation_demo() {
  const auto d1 = demo_distribution_one();
  const auto fixed = pp::best_fixed_price(d1);
  const auto pure1 = pp::plan_pure(d1);
  std::cout << "D1: fixed " << pp::format_rational(fixed.second) << " < pure "
            << pp::format_rational(pure1.revenue) << "\n";

  const auto d2 = demo_distribution_two();
  const auto pure2 = pp::plan_pure(d2);
  const auto mixed2 =
      pp::plan_mixed(d2, {pp::Rational(1, 3), pp::Rational(2, 3), pp::Rational(1)});
  std::cout << "D2: pure " << pp::format_rational(pure2.revenue) << " < mixed >= 13/27"
            << " (planner value " << pp::format_rational(mixed2.revenue) << ")\n";
}

std::string learn_csv(const pp::FiniteDistribution& dist, const pp::LearningMode& mode,
                      const std::vector<std::size_t>& ms, int trials, std::uint64_t seed,
                      const std::string& mode_name) {
  // The gap baseline: the matching planner optimum on the true distribution.
  // For mixed mode that is the optimum over the same alphabet, not the
  // unconstrained mixed optimum.
  pp::Rational benchmark;
  switch (mode.kind) {
    case pp::LearningMode::Kind::pure:
      benchmark = pp::plan_pure(dist).revenue;
      break;
    case pp::LearningMode::Kind::pure_grid:
      benchmark = pp::plan_pure_discretized(dist, pp::Rational(1, mode.grid_k)).revenue;
      break;
    case pp::LearningMode::Kind::mixed:
      benchmark = pp::plan_mixed(dist, mode.alphabet).revenue;
      break;
  }
  const auto curve = pp::learning_curve(dist, mode, ms, trials, seed);
  std::ostringstream out;
  out << "# mode=" << mode_name << " trials=" << trials << " seed=" << seed
      << " benchmark=" << pp::format_rational(benchmark)
      << (mode.kind == pp::LearningMode::Kind::mixed ? " (optimum over the given alphabet)" : "")
      << "\n";
  out << "m,trial,gap\n";
  for (const auto& point : curve) {
    for (std::size_t trial = 0; trial < point.gaps.size(); ++trial) {
      out << point.m << "," << trial << "," << pp::format_rational(point.gaps[trial]) << "\n";
    }
  }
  out << "\n";
  out << "m,trials,mean_gap,std_error\n";
  for (const auto& point : curve) {
    out << point.m << "," << point.trials << ","
        << pp::format_decimal(pp::to_double(point.mean_gap)) << ","
        << pp::format_decimal(point.std_error) << "\n";
  }
  return out.str();
}

void run_best_response(const std::string& strategy_path, const pp::Rational& value, int patience,
                       const std::string& realized_text) {
  const std::string text = pp::read_file(strategy_path);
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  const pp::BuyerType type{value, patience};
  if (doc.is_object() && doc.contains("prices")) {
    const pp::PurePricing pricing = pp::parse_pure_strategy(text);
    const auto outcome = pp::pure_best_response(pricing, type);
    if (outcome) {
      std::cout << "bought step " << outcome->step << " price "
                << pp::format_rational(outcome->price) << "\n";
    } else {
      std::cout << "no purchase\n";
    }
    return;
  }
  const pp::MixedPricing pricing = pp::parse_mixed_strategy(text);
  std::cout << "utility " << pp::format_rational(pp::best_response_utility(pricing, type)) << "\n";
  const auto policy = pp::best_response_thresholds(pricing, type);
  for (const auto& [history, threshold] : policy.thresholds) {
    std::cout << "threshold [" << join_prices(history) << "] " << pp::format_rational(threshold)
              << "\n";
  }
  if (!realized_text.empty()) {
    const pp::PurePricing realized(parse_rational_list(realized_text));
    const auto outcome = pp::simulate_purchase(pricing, type, realized);
    std::cout << "realized " << join_prices(realized.prices()) << " -> ";
    if (outcome) {
      std::cout << "bought step " << outcome->step << " price "
                << pp::format_rational(outcome->price) << "\n";
    } else {
      std::cout << "no purchase\n";
    }
  }
}

void run_shatter(int w, const pp::Rational& gamma, const pp::Rational& alpha) {
  const auto instance = pp::shattering_witness(w, gamma, alpha);
  std::cout << "w " << w << " gamma " << pp::format_rational(gamma) << " alpha "
            << pp::format_rational(alpha) << "\n";
  for (std::size_t i = 0; i < instance.points.size(); ++i) {
    std::cout << "point " << (i + 1) << " value "
              << pp::format_rational(instance.points[i].value) << " witness "
              << pp::format_rational(instance.witness[i]) << "\n";
  }
  bool all_ok = true;
  for (std::size_t mask = 0; mask < instance.pricing_for.size(); ++mask) {
    std::string sigma;
    for (int i = 1; i <= w; ++i) sigma += ((mask >> (i - 1)) & 1u) ? '+' : '-';
    bool ok = true;
    for (int i = 1; i <= w; ++i) {
      const pp::Rational revenue = pp::revenue_pure_single(
          instance.pricing_for[mask], instance.points[static_cast<std::size_t>(i - 1)]);
      const pp::Rational& c = instance.witness[static_cast<std::size_t>(i - 1)];
      const bool plus = (mask >> (i - 1)) & 1u;
      ok = ok && (plus ? revenue >= c + gamma : revenue <= c - gamma);
    }
    all_ok = all_ok && ok;
    std::cout << "sigma " << sigma << " pricing "
              << join_prices(instance.pricing_for[mask].prices()) << " : "
              << (ok ? "ok" : "violated") << "\n";
  }
  std::cout << "verified " << (all_ok ? "true" : "false") << "\n";
}

const char* mode_name(pp::OnlineMode mode) {
  return mode == pp::OnlineMode::pure ? "pure" : "mixed";
}

void run_online_command(const pp::FiniteDistribution& dist, int T, pp::OnlineMode mode,
                        const std::vector<std::uint64_t>& seeds,
                        const std::vector<pp::Rational>& alphabet, const std::string& out_path,
                        const std::string& summary_path) {
  const auto traces = pp::run_online_many(dist, T, mode, seeds, alphabet);
  std::ostringstream rows;
  rows << "seed,t,instant_regret,cum_regret\n";
  for (const auto& trace : traces) {
    for (int t = 1; t <= trace.T; ++t) {
      rows << trace.seed << "," << t << ","
           << pp::format_rational(trace.instant[static_cast<std::size_t>(t - 1)]) << ","
           << pp::format_rational(trace.cumulative[static_cast<std::size_t>(t - 1)]) << "\n";
    }
  }
  emit(rows.str(), out_path);

  const auto summary = pp::regret_summary(traces);
  std::ostringstream sum;
  sum << "T,mode,traces,checkpoint,mean_cum_regret,std_cum_regret\n";
  for (std::size_t i = 0; i < summary.checkpoints.size(); ++i) {
    sum << summary.T << "," << mode_name(summary.mode) << "," << summary.traces << ","
        << summary.checkpoints[i] << "," << pp::format_decimal(summary.mean_cumulative[i]) << ","
        << pp::format_decimal(summary.std_cumulative[i]) << "\n";
  }
  sum << "slope,"
      << (summary.loglog_slope ? pp::format_decimal(*summary.loglog_slope) : std::string("flat"))
      << "\n";
  emit(sum.str(), summary_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Revenue-optimal posted-price strategies against patient buyers"};
  app.require_subcommand(1);

  // plan-pure
  std::string pp_dist, pp_epsilon, pp_out;
  auto* plan_pure_cmd = app.add_subcommand("plan-pure", "Optimal pure selling strategy");
  plan_pure_cmd->add_option("--dist", pp_dist, "Distribution file")->required();
  plan_pure_cmd->add_option("--epsilon", pp_epsilon, "Price-grid resolution a/b");
  plan_pure_cmd->add_option("--out", pp_out, "Write the strategy file here");
  plan_pure_cmd->callback([&] {
    const auto dist = load_distribution(pp_dist);
    const auto plan = pp_epsilon.empty()
                          ? pp::plan_pure(dist)
                          : pp::plan_pure_discretized(dist, pp::parse_rational(pp_epsilon));
    print_pure_plan(plan, pp_out);
  });

  // plan-mixed
  std::string pm_dist, pm_alphabet, pm_epsilon, pm_out;
  int pm_w_guard = 4, pm_v_guard = 4;
  auto* plan_mixed_cmd = app.add_subcommand("plan-mixed", "Optimal mixed selling strategy");
  plan_mixed_cmd->add_option("--dist", pm_dist, "Distribution file")->required();
  plan_mixed_cmd->add_option("--alphabet", pm_alphabet, "Comma-separated price alphabet");
  plan_mixed_cmd->add_option("--epsilon", pm_epsilon, "Price-grid resolution a/b");
  plan_mixed_cmd->add_option("--max-w-guard", pm_w_guard, "Maximum patience the planner accepts");
  plan_mixed_cmd->add_option("--max-values-guard", pm_v_guard,
                             "Maximum value-support size the planner accepts");
  plan_mixed_cmd->add_option("--out", pm_out, "Write the strategy file here");
  plan_mixed_cmd->callback([&] {
    if (pm_alphabet.empty() == pm_epsilon.empty()) {
      throw pp::ValidationError("give exactly one of --alphabet and --epsilon");
    }
    const auto dist = load_distribution(pm_dist);
    pp::MixedPlannerOptions options{pm_w_guard, pm_v_guard};
    const auto plan =
        pm_alphabet.empty()
            ? pp::plan_mixed_discretized(dist, pp::parse_rational(pm_epsilon), options)
            : pp::plan_mixed(dist, parse_rational_list(pm_alphabet), options);
    print_mixed_plan(plan, pm_out);
  });

  // best-response
  std::string br_strategy, br_value, br_realized;
  int br_patience = 1;
  auto* best_response_cmd =
      app.add_subcommand("best-response", "Buyer best response against a strategy file");
  best_response_cmd->add_option("--strategy", br_strategy, "Pure or mixed strategy file")
      ->required();
  best_response_cmd->add_option("--value", br_value, "Buyer value")->required();
  best_response_cmd->add_option("--patience", br_patience, "Buyer patience")->required();
  best_response_cmd->add_option("--realized", br_realized,
                                "Realized prices (mixed strategies only)");
  best_response_cmd->callback(
      [&] { run_best_response(br_strategy, pp::parse_rational(br_value), br_patience, br_realized); });

  // learn
  std::string ln_dist, ln_mode = "pure", ln_m, ln_alphabet, ln_out;
  int ln_trials = 50, ln_k = 0;
  std::uint64_t ln_seed = 0;
  auto* learn_cmd = app.add_subcommand("learn", "Sample-complexity experiment (CSV)");
  learn_cmd->add_option("--dist", ln_dist, "Distribution file")->required();
  learn_cmd->add_option("--mode", ln_mode, "pure | pure-grid | mixed");
  learn_cmd->add_option("--m", ln_m, "Comma-separated sample sizes")->required();
  learn_cmd->add_option("--trials", ln_trials, "Trials per sample size");
  learn_cmd->add_option("--seed", ln_seed, "Master seed");
  learn_cmd->add_option("--k", ln_k, "Grid resolution for pure-grid");
  learn_cmd->add_option("--alphabet", ln_alphabet, "Price alphabet for mixed");
  learn_cmd->add_option("--out", ln_out, "Write the CSV here");
  learn_cmd->callback([&] {
    const auto dist = load_distribution(ln_dist);
    pp::LearningMode mode;
    if (ln_mode == "pure") {
      mode = pp::LearningMode::pure();
    } else if (ln_mode == "pure-grid") {
      mode = pp::LearningMode::pure_grid(ln_k);
    } else if (ln_mode == "mixed") {
      mode = pp::LearningMode::mixed(parse_rational_list(ln_alphabet));
    } else {
      throw pp::ValidationError("unknown mode '" + ln_mode + "'");
    }
    emit(learn_csv(dist, mode, parse_size_list(ln_m), ln_trials, ln_seed, ln_mode), ln_out);
  });

  // online
  std::string on_dist, on_mode = "pure", on_seeds = "0", on_alphabet, on_out, on_summary;
  int on_T = 1024;
  auto* online_cmd = app.add_subcommand("online", "Doubling-epoch online seller (CSV)");
  online_cmd->add_option("--dist", on_dist, "Distribution file")->required();
  online_cmd->add_option("--mode", on_mode, "pure | mixed");
  online_cmd->add_option("--T", on_T, "Rounds per run");
  online_cmd->add_option("--seeds", on_seeds, "Seed list: 7 or 1,2,3 or 1..50");
  online_cmd->add_option("--alphabet", on_alphabet, "Price alphabet for mixed");
  online_cmd->add_option("--out", on_out, "Write the trace CSV here");
  online_cmd->add_option("--summary-out", on_summary, "Write the summary CSV here");
  online_cmd->callback([&] {
    const auto dist = load_distribution(on_dist);
    pp::OnlineMode mode;
    if (on_mode == "pure") {
      mode = pp::OnlineMode::pure;
    } else if (on_mode == "mixed") {
      mode = pp::OnlineMode::mixed;
    } else {
      throw pp::ValidationError("unknown mode '" + on_mode + "'");
    }
    const auto alphabet =
        on_alphabet.empty() ? std::vector<pp::Rational>{} : parse_rational_list(on_alphabet);
    run_online_command(dist, on_T, mode, parse_seed_list(on_seeds), alphabet, on_out, on_summary);
  });

  // shatter
  int sh_w = 2;
  std::string sh_gamma, sh_alpha;
  auto* shatter_cmd = app.add_subcommand("shatter", "Shattering witness verification report");
  shatter_cmd->add_option("--w", sh_w, "Number of points / maximum patience")->required();
  shatter_cmd->add_option("--gamma", sh_gamma, "Shattering scale")->required();
  shatter_cmd->add_option("--alpha", sh_alpha, "Value spacing")->required();
  shatter_cmd->callback(
      [&] { run_shatter(sh_w, pp::parse_rational(sh_gamma), pp::parse_rational(sh_alpha)); });

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference solvers");
  oracle_cmd->require_subcommand(1);
  std::string op_dist;
  auto* oracle_pure = oracle_cmd->add_subcommand("pure", "Enumerate non-increasing pricings");
  oracle_pure->add_option("--dist", op_dist, "Distribution file")->required();
  oracle_pure->callback([&] {
    const auto plan = pp::oracle::brute_force_pure(load_distribution(op_dist));
    std::cout << "revenue " << pp::format_rational(plan.revenue) << "\n";
    std::cout << "prices " << join_prices(plan.pricing.prices()) << "\n";
  });

  std::string ob_strategy, ob_value;
  int ob_patience = 1;
  auto* oracle_buyer = oracle_cmd->add_subcommand("buyer", "Enumerate buyer stopping rules");
  oracle_buyer->add_option("--strategy", ob_strategy, "Mixed strategy file")->required();
  oracle_buyer->add_option("--value", ob_value, "Buyer value")->required();
  oracle_buyer->add_option("--patience", ob_patience, "Buyer patience")->required();
  oracle_buyer->callback([&] {
    const auto pricing = pp::parse_mixed_strategy(pp::read_file(ob_strategy));
    const pp::Rational utility = pp::oracle::brute_force_buyer(
        pricing, pp::BuyerType{pp::parse_rational(ob_value), ob_patience});
    std::cout << "utility " << pp::format_rational(utility) << "\n";
  });

  std::string om_dist, om_alphabet;
  int om_cap = 2, om_grid = 24;
  auto* oracle_mixed = oracle_cmd->add_subcommand("mixed", "Grid search over small mixtures");
  oracle_mixed->add_option("--dist", om_dist, "Distribution file")->required();
  oracle_mixed->add_option("--alphabet", om_alphabet, "Comma-separated price alphabet")->required();
  oracle_mixed->add_option("--cap", om_cap, "Maximum support size");
  oracle_mixed->add_option("--grid", om_grid, "Probability grid denominator");
  oracle_mixed->callback([&] {
    const auto result = pp::oracle::brute_force_mixed(
        load_distribution(om_dist), parse_rational_list(om_alphabet), om_cap, om_grid);
    std::cout << "revenue " << pp::format_rational(result.revenue) << "\n";
    for (const auto& [pricing, prob] : result.strategy.support()) {
      std::cout << "pricing " << join_prices(pricing.prices()) << " prob "
                << pp::format_rational(prob) << "\n";
    }
  });

  // separation-demo
  app.add_subcommand("separation-demo", "Fixed < pure < mixed on the built-in examples")
      ->callback(run_separation_demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const pp::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pp::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
