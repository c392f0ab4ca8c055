#include "patient_pricing/lp.hpp"

#include "patient_pricing/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>

namespace patient_pricing {

namespace {

// Dense tableau in dictionary form: rows hold B^{-1}A and B^{-1}b, the
// objective row holds reduced costs for maximization.
class Simplex {
 public:
  Simplex(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
          std::vector<std::size_t> basis, std::size_t columns)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)), cols_(columns) {}

  // Runs simplex for the given costs. Returns false when unbounded.
  bool maximize(const std::vector<Rational>& costs) {
    build_objective(costs);
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {  // Bland: lowest eligible index
        if (reduced_[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;

      std::size_t leave = rows_.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rational ratio = rhs_[i] / rows_[i][enter];
        if (leave == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == rows_.size()) return false;
      pivot(leave, enter);
    }
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  const Rational& objective_value() const { return value_; }
  std::size_t row_count() const { return rows_.size(); }

  Rational variable_value(std::size_t column) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] == column) return rhs_[i];
    }
    return Rational(0);
  }

  // Degenerate pivot forcing the basic variable of `row` out, using any
  // nonzero coefficient among columns [0, limit). False: row is redundant.
  bool pivot_row_out(std::size_t row, std::size_t limit) {
    for (std::size_t j = 0; j < limit; ++j) {
      if (rows_[row][j] != 0) {
        pivot(row, j);
        return true;
      }
    }
    return false;
  }

  void drop_row(std::size_t row) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(row));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(row));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
  }

  void shrink_columns(std::size_t columns) {
    cols_ = columns;
    for (auto& row : rows_) row.resize(columns);
  }

 private:
  void build_objective(const std::vector<Rational>& costs) {
    reduced_.assign(cols_, Rational(0));
    value_ = 0;
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = costs[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = costs[basis_[i]];
      if (cb == 0) continue;
      value_ += cb * rhs_[i];
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * rows_[i][j];
    }
  }

  void pivot(std::size_t leave, std::size_t enter) {
    const Rational inv = Rational(1) / rows_[leave][enter];
    for (std::size_t j = 0; j < cols_; ++j) rows_[leave][j] *= inv;
    rhs_[leave] *= inv;
    rows_[leave][enter] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == leave || rows_[i][enter] == 0) continue;
      const Rational factor = rows_[i][enter];
      for (std::size_t j = 0; j < cols_; ++j) rows_[i][j] -= factor * rows_[leave][j];
      rhs_[i] -= factor * rhs_[leave];
      rows_[i][enter] = 0;
    }
    if (!reduced_.empty() && reduced_[enter] != 0) {
      const Rational factor = reduced_[enter];
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= factor * rows_[leave][j];
      value_ += factor * rhs_[leave];
      reduced_[enter] = 0;
    }
    basis_[leave] = enter;
  }

  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
  std::vector<Rational> reduced_;
  Rational value_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  for (const auto& row : lp.rows) {
    if (row.coeffs.size() != n) {
      throw ValidationError("linear program row width does not match the objective");
    }
  }
  const std::size_t m = lp.rows.size();

  // Normalize right-hand sides to be non-negative.
  std::vector<std::vector<Rational>> coeffs(m);
  std::vector<Rational> rhs(m);
  std::vector<RowSense> sense(m);
  for (std::size_t i = 0; i < m; ++i) {
    coeffs[i] = lp.rows[i].coeffs;
    rhs[i] = lp.rows[i].rhs;
    sense[i] = lp.rows[i].sense;
    if (rhs[i] < 0) {
      for (auto& c : coeffs[i]) c = -c;
      rhs[i] = -rhs[i];
      if (sense[i] == RowSense::le) {
        sense[i] = RowSense::ge;
      } else if (sense[i] == RowSense::ge) {
        sense[i] = RowSense::le;
      }
    }
  }

  // Columns: originals, one slack/surplus per inequality, one artificial per
  // row not directly started by a slack.
  std::size_t slack_count = 0, artificial_count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (sense[i] != RowSense::eq) ++slack_count;
    if (sense[i] != RowSense::le) ++artificial_count;
  }
  const std::size_t real_columns = n + slack_count;
  const std::size_t total = real_columns + artificial_count;

  std::vector<std::vector<Rational>> tableau(m, std::vector<Rational>(total, Rational(0)));
  std::vector<std::size_t> basis(m, 0);
  std::size_t slack_at = n;
  std::size_t artificial_at = real_columns;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tableau[i][j] = coeffs[i][j];
    switch (sense[i]) {
      case RowSense::le:
        tableau[i][slack_at] = 1;
        basis[i] = slack_at++;
        break;
      case RowSense::ge:
        tableau[i][slack_at] = -1;
        ++slack_at;
        tableau[i][artificial_at] = 1;
        basis[i] = artificial_at++;
        break;
      case RowSense::eq:
        tableau[i][artificial_at] = 1;
        basis[i] = artificial_at++;
        break;
    }
  }

  Simplex simplex(std::move(tableau), std::move(rhs), std::move(basis), total);

  if (artificial_count > 0) {
    std::vector<Rational> phase_one(total, Rational(0));
    for (std::size_t j = real_columns; j < total; ++j) phase_one[j] = -1;
    simplex.maximize(phase_one);  // bounded above by zero
    if (simplex.objective_value() != 0) {
      return {LpStatus::infeasible, Rational(0), {}};
    }
    for (std::size_t i = 0; i < simplex.row_count();) {
      if (simplex.basis()[i] >= real_columns) {
        if (!simplex.pivot_row_out(i, real_columns)) {
          simplex.drop_row(i);
          continue;
        }
      }
      ++i;
    }
  }
  simplex.shrink_columns(real_columns);

  std::vector<Rational> costs(real_columns, Rational(0));
  for (std::size_t j = 0; j < n; ++j) costs[j] = lp.objective[j];
  if (!simplex.maximize(costs)) {
    return {LpStatus::unbounded, Rational(0), {}};
  }

  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = simplex.variable_value(j);
  return {LpStatus::optimal, simplex.objective_value(), std::move(x)};
}

PricingLpResult solve_pricing_lp(const LpInstance& instance) {
  const std::size_t n = instance.objective.size();
  if (n == 0) throw ValidationError("pricing program has an empty alphabet");

  LinearProgram lp;
  lp.objective = instance.objective;
  lp.rows.push_back({std::vector<Rational>(n, Rational(1)), RowSense::eq, Rational(1)});
  for (const auto& row : instance.rows) {
    if (row.utilities.size() != n) {
      throw ValidationError("utility row width does not match the alphabet");
    }
    lp.rows.push_back({row.utilities, row.keeps_waiting ? RowSense::ge : RowSense::le, row.bound});
  }

  LpResult first = solve_lp(lp);
  if (first.status == LpStatus::infeasible) {
    std::vector<Rational> fallback(n, Rational(0));
    fallback[0] = 1;
    return {false, Rational(0), std::move(fallback), true};
  }
  if (first.status != LpStatus::optimal) {
    throw std::logic_error("pricing program cannot be unbounded over a probability simplex");
  }

  PricingLpResult out{true, first.value, first.x, true};

  bool has_waiting = false;
  for (const auto& row : instance.rows) has_waiting = has_waiting || row.keeps_waiting;
  if (!has_waiting) return out;

  // Second pass: among optima, maximize the smallest slack of the waiting
  // rows. Positive means some optimal alpha keeps every waiting buyer
  // strictly away from indifference.
  LinearProgram slack_lp;
  slack_lp.objective.assign(n + 1, Rational(0));
  slack_lp.objective[n] = 1;
  {
    std::vector<Rational> ones(n + 1, Rational(1));
    ones[n] = 0;
    slack_lp.rows.push_back({std::move(ones), RowSense::eq, Rational(1)});
  }
  for (const auto& row : instance.rows) {
    std::vector<Rational> coeffs = row.utilities;
    coeffs.push_back(row.keeps_waiting ? Rational(-1) : Rational(0));
    slack_lp.rows.push_back(
        {std::move(coeffs), row.keeps_waiting ? RowSense::ge : RowSense::le, row.bound});
  }
  {
    std::vector<Rational> pin = instance.objective;
    pin.push_back(Rational(0));
    slack_lp.rows.push_back({std::move(pin), RowSense::eq, first.value});
  }

  LpResult second = solve_lp(slack_lp);
  if (second.status != LpStatus::optimal) {
    throw std::logic_error("slack maximization must stay feasible and bounded");
  }
  if (second.value > 0) {
    out.alpha.assign(second.x.begin(), second.x.begin() + static_cast<std::ptrdiff_t>(n));
    out.interior = true;
  } else {
    out.interior = false;
  }
  return out;
}

}  // namespace patient_pricing
