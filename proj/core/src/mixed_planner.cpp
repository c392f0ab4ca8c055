#include "patient_pricing/mixed_planner.hpp"

#include "patient_pricing/errors.hpp"
#include "patient_pricing/lp.hpp"
#include "patient_pricing/pure_planner.hpp"
#include "patient_pricing/revenue.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace patient_pricing {

namespace {

// Survivor ceilings, one slot per patience: an index into that patience's
// ascending value list, or -1 for "no survivors at this patience".
using Ceilings = std::vector<int>;

struct Cell {
  Rational revenue;                 // revenue from this step onward
  std::vector<Rational> utilities;  // per support type, from this step onward
  Ceilings next;                    // chosen successor ceilings
  std::vector<Rational> alpha;      // next-step price distribution
  bool interior = true;
};

using StepTable = std::map<std::pair<int, Ceilings>, Cell>;

class MixedDp {
 public:
  MixedDp(const FiniteDistribution& dist, std::vector<Rational> alphabet,
          const MixedPlannerOptions& options)
      : dist_(dist), alphabet_(std::move(alphabet)), w_(dist.w_max()) {
    std::sort(alphabet_.begin(), alphabet_.end());
    alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
    if (alphabet_.empty()) throw ValidationError("empty price alphabet");
    for (const Rational& p : alphabet_) {
      if (!in_unit_interval(p)) {
        throw ValidationError("alphabet price " + format_rational(p) + " outside [0, 1]");
      }
    }
    if (w_ > options.max_patience_guard) {
      throw BudgetError("max patience " + std::to_string(w_) + " exceeds the planner guard " +
                        std::to_string(options.max_patience_guard) +
                        " (the state space is exponential in it)");
    }
    if (static_cast<int>(dist.value_support().size()) > options.max_values_guard) {
      throw BudgetError("value support size " + std::to_string(dist.value_support().size()) +
                        " exceeds the planner guard " + std::to_string(options.max_values_guard));
    }
    values_by_patience_.resize(static_cast<std::size_t>(w_) + 1);
    for (int w = 1; w <= w_; ++w) {
      values_by_patience_[static_cast<std::size_t>(w)] = dist.values_with_patience(w);
    }
    tables_.resize(static_cast<std::size_t>(w_) + 2);
  }

  MixedPlan run() {
    for (int step = w_; step >= 1; --step) fill_step(step);
    return reconstruct();
  }

 private:
  const std::vector<Rational>& values_at(int patience) const {
    return values_by_patience_[static_cast<std::size_t>(patience)];
  }

  std::optional<Rational> ceiling_value(const Ceilings& c, int patience) const {
    int idx = c[static_cast<std::size_t>(patience - 1)];
    if (idx < 0) return std::nullopt;
    return values_at(patience)[static_cast<std::size_t>(idx)];
  }

  // All ceiling vectors that can occur at `step`: sentinel below it, any
  // index at or above it.
  std::vector<Ceilings> states_at(int step) const {
    std::vector<Ceilings> out;
    Ceilings current(static_cast<std::size_t>(w_), -1);
    enumerate(step, 1, current, out);
    return out;
  }

  void enumerate(int step, int patience, Ceilings& current, std::vector<Ceilings>& out) const {
    if (patience > w_) {
      out.push_back(current);
      return;
    }
    const std::size_t slot = static_cast<std::size_t>(patience - 1);
    const int top =
        patience < step ? -1 : static_cast<int>(values_at(patience).size()) - 1;
    for (int idx = -1; idx <= top; ++idx) {
      current[slot] = idx;
      enumerate(step, patience + 1, current, out);
    }
    current[slot] = -1;
  }

  // Successor candidates: componentwise at most `from`, sentinel at or below
  // the current step.
  std::vector<Ceilings> candidates_after(const Ceilings& from, int step) const {
    std::vector<Ceilings> out;
    Ceilings current(static_cast<std::size_t>(w_), -1);
    enumerate_candidates(from, step, 1, current, out);
    return out;
  }

  void enumerate_candidates(const Ceilings& from, int step, int patience, Ceilings& current,
                            std::vector<Ceilings>& out) const {
    if (patience > w_) {
      out.push_back(current);
      return;
    }
    const std::size_t slot = static_cast<std::size_t>(patience - 1);
    const int top = patience <= step ? -1 : from[slot];
    for (int idx = -1; idx <= top; ++idx) {
      current[slot] = idx;
      enumerate_candidates(from, step, patience + 1, current, out);
    }
    current[slot] = -1;
  }

  // Expected revenue collected at `step` from patient buyers who stop
  // waiting: patience above `step`, value above the successor ceiling but
  // within the current one.
  Rational early_purchase_mass(const Ceilings& current, const Ceilings& next, int step) const {
    Rational total = 0;
    for (const auto& [type, prob] : dist_.support()) {
      if (type.patience <= step) continue;
      const std::size_t slot = static_cast<std::size_t>(type.patience - 1);
      auto lower = next[slot];
      auto upper = current[slot];
      const auto& values = values_at(type.patience);
      auto value_index = static_cast<int>(
          std::lower_bound(values.begin(), values.end(), type.value) - values.begin());
      if (value_index > lower && value_index <= upper) total += prob;
    }
    return total;
  }

  void fill_step(int step) {
    StepTable& table = tables_[static_cast<std::size_t>(step)];
    const StepTable* next_table =
        step < w_ ? &tables_[static_cast<std::size_t>(step) + 1] : nullptr;
    const std::size_t n = alphabet_.size();

    for (const Ceilings& state : states_at(step)) {
      for (std::size_t price_idx = 0; price_idx < n; ++price_idx) {
        const Rational& price = alphabet_[price_idx];
        ++states_;

        struct Choice {
          Rational total;
          Ceilings next;
          std::vector<Rational> alpha;
          bool interior = true;
          Rational continuation;
        };
        std::optional<Choice> best;

        for (const Ceilings& cand : candidates_after(state, step)) {
          LpInstance instance;
          instance.objective.assign(n, Rational(0));
          if (next_table != nullptr) {
            for (std::size_t j = 0; j < n; ++j) {
              instance.objective[j] =
                  next_table->at({static_cast<int>(j), cand}).revenue;
            }
          }
          for (int patience = step + 1; patience <= w_; ++patience) {
            const auto& values = values_at(patience);
            if (values.empty()) continue;
            const std::size_t slot = static_cast<std::size_t>(patience - 1);
            const int kept = cand[slot];
            if (kept >= 0) {
              instance.rows.push_back({utility_row(values[static_cast<std::size_t>(kept)],
                                                   patience, cand, next_table),
                                       values[static_cast<std::size_t>(kept)] - price, true});
            }
            // Smallest present buyer who stops waiting; buyers above the
            // current ceiling are not at this state and get no row.
            if (kept < state[slot]) {
              const Rational& above = values[static_cast<std::size_t>(kept) + 1];
              instance.rows.push_back(
                  {utility_row(above, patience, cand, next_table), above - price, false});
            }
          }

          PricingLpResult lp = solve_pricing_lp(instance);
          ++lp_calls_;
          if (!lp.feasible) continue;

          Rational total = lp.value + early_purchase_mass(state, cand, step) * price;
          if (!best || total > best->total ||
              (total == best->total && lp.interior && !best->interior) ||
              (total == best->total && lp.interior == best->interior && cand < best->next)) {
            best = Choice{std::move(total), cand, std::move(lp.alpha), lp.interior,
                          std::move(lp.value)};
          }
        }
        if (!best) {
          throw std::logic_error("no feasible successor; keeping every survivor must be feasible");
        }

        Cell cell;
        cell.next = best->next;
        cell.alpha = best->alpha;
        cell.interior = best->interior;

        Rational own = 0;
        if (auto ceiling = ceiling_value(state, step)) {
          own = dist_.mass([&](const BuyerType& z) {
                  return z.patience == step && z.value >= price && z.value <= *ceiling;
                }) *
                price;
        }
        cell.revenue = own + best->total;

        cell.utilities.assign(dist_.support().size(), Rational(0));
        for (std::size_t t = 0; t < dist_.support().size(); ++t) {
          const BuyerType& type = dist_.support()[t].first;
          if (type.patience < step) continue;
          Rational wait = 0;
          if (next_table != nullptr) {
            for (std::size_t j = 0; j < n; ++j) {
              if (cell.alpha[j] == 0) continue;
              wait += cell.alpha[j] *
                      next_table->at({static_cast<int>(j), cell.next}).utilities[t];
            }
          }
          Rational now = type.value - price;
          cell.utilities[t] = std::max(now, wait);
        }

        table[{static_cast<int>(price_idx), state}] = std::move(cell);
      }
    }
  }

  std::vector<Rational> utility_row(const Rational& value, int patience, const Ceilings& cand,
                                    const StepTable* next_table) const {
    const std::size_t n = alphabet_.size();
    std::vector<Rational> row(n, Rational(0));
    if (next_table == nullptr) return row;  // past the horizon, utilities are zero
    std::size_t type_index = index_of_type(value, patience);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = next_table->at({static_cast<int>(j), cand}).utilities[type_index];
    }
    return row;
  }

  std::size_t index_of_type(const Rational& value, int patience) const {
    const auto& support = dist_.support();
    for (std::size_t t = 0; t < support.size(); ++t) {
      if (support[t].first.patience == patience && support[t].first.value == value) return t;
    }
    throw std::logic_error("constraint references a type outside the support");
  }

  MixedPlan reconstruct() {
    Ceilings root(static_cast<std::size_t>(w_), -1);
    for (int patience = 1; patience <= w_; ++patience) {
      root[static_cast<std::size_t>(patience - 1)] =
          static_cast<int>(values_at(patience).size()) - 1;
    }
    const StepTable& first = tables_[1];
    std::size_t best_price = 0;
    for (std::size_t j = 1; j < alphabet_.size(); ++j) {
      if (first.at({static_cast<int>(j), root}).revenue >
          first.at({static_cast<int>(best_price), root}).revenue) {
        best_price = j;
      }
    }
    const Rational root_value = first.at({static_cast<int>(best_price), root}).revenue;

    MixedPlan plan{MixedPricing::point_mass(PurePricing::fixed(alphabet_.front(), w_)),
                   Rational(0), root_value, {}, states_, lp_calls_};
    std::vector<std::pair<PurePricing, Rational>> support;
    PriceHistory prefix{alphabet_[best_price]};
    std::vector<bool> alive(dist_.support().size(), true);
    walk(1, static_cast<int>(best_price), root, alive, Rational(1), prefix, support, plan.chain);

    plan.strategy = MixedPricing(alphabet_, std::move(support));
    plan.revenue = revenue_mixed(plan.strategy, dist_);
    if (plan.revenue != root_value) {
      throw std::logic_error("mixed planner table value " + format_rational(root_value) +
                             " does not match recomputed revenue " +
                             format_rational(plan.revenue));
    }
    return plan;
  }

  // Ceilings for the types still marked alive with enough patience left.
  std::vector<std::optional<Rational>> alive_ceilings(const std::vector<bool>& alive,
                                                      int min_patience) const {
    std::vector<std::optional<Rational>> out(static_cast<std::size_t>(w_));
    for (std::size_t t = 0; t < dist_.support().size(); ++t) {
      const BuyerType& type = dist_.support()[t].first;
      if (!alive[t] || type.patience < min_patience) continue;
      auto& slot = out[static_cast<std::size_t>(type.patience - 1)];
      if (!slot || *slot < type.value) slot = type.value;
    }
    return out;
  }

  // The recursion follows the table's chosen successors; the recorded
  // ceilings describe the simulated buyer flow (ties buy), which can shed a
  // payoff-neutral indifferent buyer earlier than the solver's bookkeeping.
  void walk(int step, int price_idx, const Ceilings& state, const std::vector<bool>& alive,
            Rational prob, PriceHistory& prefix,
            std::vector<std::pair<PurePricing, Rational>>& support,
            std::vector<MixedChainNode>& chain) {
    const Cell& cell = tables_[static_cast<std::size_t>(step)].at({price_idx, state});
    const Rational& price = alphabet_[static_cast<std::size_t>(price_idx)];

    std::vector<bool> next_alive = alive;
    for (std::size_t t = 0; t < dist_.support().size(); ++t) {
      const BuyerType& type = dist_.support()[t].first;
      if (!alive[t] || type.patience < step) continue;
      Rational wait = 0;
      if (step < w_) {
        const StepTable& next_table = tables_[static_cast<std::size_t>(step) + 1];
        for (std::size_t j = 0; j < alphabet_.size(); ++j) {
          if (cell.alpha[j] == 0) continue;
          wait += cell.alpha[j] * next_table.at({static_cast<int>(j), cell.next}).utilities[t];
        }
      }
      if (type.value - price >= wait) next_alive[t] = false;  // buys, on equality too
    }

    MixedChainNode node;
    node.step = step;
    node.prefix = prefix;
    node.ceilings = alive_ceilings(alive, step);
    node.next_ceilings = alive_ceilings(next_alive, step + 1);
    node.alpha = cell.alpha;
    node.type_utilities = cell.utilities;
    chain.push_back(std::move(node));

    if (step == w_) {
      support.emplace_back(PurePricing(prefix), std::move(prob));
      return;
    }
    for (std::size_t j = 0; j < alphabet_.size(); ++j) {
      if (cell.alpha[j] == 0) continue;
      prefix.push_back(alphabet_[j]);
      walk(step + 1, static_cast<int>(j), cell.next, next_alive, prob * cell.alpha[j], prefix,
           support, chain);
      prefix.pop_back();
    }
  }

  const FiniteDistribution& dist_;
  std::vector<Rational> alphabet_;
  int w_;
  std::vector<std::vector<Rational>> values_by_patience_;
  std::vector<StepTable> tables_;
  std::size_t states_ = 0;
  std::size_t lp_calls_ = 0;
};

}  // namespace

MixedPlan plan_mixed(const FiniteDistribution& dist, std::vector<Rational> alphabet,
                     const MixedPlannerOptions& options) {
  MixedDp dp(dist, std::move(alphabet), options);
  return dp.run();
}

MixedPlan plan_mixed_discretized(const FiniteDistribution& dist, const Rational& epsilon,
                                 const MixedPlannerOptions& options) {
  return plan_mixed(dist, price_grid(epsilon), options);
}

}  // namespace patient_pricing
