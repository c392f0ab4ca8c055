#pragma once

#include "patient_pricing/rational.hpp"

#include <vector>

namespace patient_pricing {

enum class RowSense { le, ge, eq };

/// maximize objective . x  subject to the rows and x >= 0.
struct LinearProgram {
  struct Row {
    std::vector<Rational> coeffs;
    RowSense sense = RowSense::le;
    Rational rhs;
  };
  std::vector<Rational> objective;
  std::vector<Row> rows;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// Two-phase primal simplex in exact rational arithmetic, Bland's rule.
LpResult solve_lp(const LinearProgram& lp);

/// One step-transition program of the mixed planner: choose a distribution
/// alpha over the price alphabet maximizing expected continuation revenue,
/// subject to per-buyer utility rows that pin who waits and who buys now.
struct LpInstance {
  /// Continuation revenue per alphabet price.
  std::vector<Rational> objective;
  struct UtilityRow {
    std::vector<Rational> utilities;  // per alphabet price
    Rational bound;                   // value minus the current price
    bool keeps_waiting = false;       // true: sum >= bound; false: sum <= bound
  };
  std::vector<UtilityRow> rows;
};

struct PricingLpResult {
  bool feasible = false;
  Rational value;                // zero when infeasible
  std::vector<Rational> alpha;   // always a valid distribution
  /// True when an optimal alpha exists with every keeps_waiting row strict,
  /// i.e. no waiting buyer sits exactly at indifference.
  bool interior = true;
};

PricingLpResult solve_pricing_lp(const LpInstance& instance);

}  // namespace patient_pricing
