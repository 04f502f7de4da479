#include "ordmatch/lp.h"

#include <optional>
#include <stdexcept>

#include "ordmatch/errors.h"

namespace ordmatch {

int LinearProgram::add_variable() {
  objective_.emplace_back();
  return variables() - 1;
}

void LinearProgram::set_objective(int var, Rational coef) {
  if (var < 0 || var >= variables()) throw InvalidInput("objective variable out of range");
  objective_[var] = std::move(coef);
}

void LinearProgram::add_constraint(std::vector<LinearTerm> terms, Sense sense, Rational rhs) {
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= variables()) throw InvalidInput("constraint variable out of range");
  }
  rows_.push_back({std::move(terms), sense, std::move(rhs)});
}

Rational LinearProgram::evaluate(const LinearConstraint& row, const std::vector<Rational>& x) {
  Rational lhs;
  for (const auto& t : row.terms) lhs += t.coef * x[t.var];
  return lhs;
}

bool LinearProgram::feasible(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != variables()) return false;
  for (const auto& v : x) {
    if (v.sign() < 0) return false;
  }
  for (const auto& row : rows_) {
    const Rational lhs = evaluate(row, x);
    switch (row.sense) {
      case Sense::kLe: if (lhs > row.rhs) return false; break;
      case Sense::kGe: if (lhs < row.rhs) return false; break;
      case Sense::kEq: if (lhs != row.rhs) return false; break;
    }
  }
  return true;
}

namespace {

class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : originals_(lp.variables()) {
    const auto& rows = lp.constraints();
    const int m = static_cast<int>(rows.size());
    // Column layout: originals, one slack/surplus per inequality, one
    // artificial per row that lacks a ready basic slack.
    int slack_count = 0;
    for (const auto& r : rows) slack_count += r.sense != Sense::kEq;
    int next_slack = originals_;
    int next_art = originals_ + slack_count;
    std::vector<int> slack_col(m, -1), art_col(m, -1);
    std::vector<char> negate(m, 0);
    for (int i = 0; i < m; ++i) {
      negate[i] = rows[i].rhs.sign() < 0;
      if (rows[i].sense != Sense::kEq) slack_col[i] = next_slack++;
      Sense s = rows[i].sense;
      if (negate[i] && s != Sense::kEq) s = s == Sense::kLe ? Sense::kGe : Sense::kLe;
      if (s != Sense::kLe) art_col[i] = next_art++;
    }
    columns_ = next_art;
    first_artificial_ = originals_ + slack_count;
    a_.assign(m, std::vector<Rational>(columns_));
    rhs_.resize(m);
    basis_.resize(m);
    for (int i = 0; i < m; ++i) {
      const Rational sign = negate[i] ? Rational(-1) : Rational(1);
      for (const auto& t : rows[i].terms) a_[i][t.var] += sign * t.coef;
      rhs_[i] = sign * rows[i].rhs;
      if (slack_col[i] >= 0) {
        const bool le = rows[i].sense == Sense::kLe;
        a_[i][slack_col[i]] = (le != static_cast<bool>(negate[i])) ? Rational(1) : Rational(-1);
      }
      if (art_col[i] >= 0) {
        a_[i][art_col[i]] = 1;
        basis_[i] = art_col[i];
      } else {
        basis_[i] = slack_col[i];
      }
    }
  }

  LpResult solve(const LinearProgram& lp) {
    LpResult out;
    if (first_artificial_ < columns_) {
      std::vector<Rational> phase1(columns_);
      for (int j = first_artificial_; j < columns_; ++j) phase1[j] = -1;
      price(phase1);
      if (!run(out.pivots, columns_).has_value()) {
        throw std::logic_error("lp_solve: phase one cannot be unbounded");
      }
      if (value_.sign() < 0) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
      evict_artificials(out.pivots);
    }
    std::vector<Rational> cost(columns_);
    for (int j = 0; j < originals_; ++j) cost[j] = lp.objective()[j];
    price(cost);
    const auto entering = run(out.pivots, first_artificial_);
    out.x = primal();
    if (!entering.has_value()) {
      out.status = LpStatus::kUnbounded;
      out.ray.assign(originals_, Rational(0));
      const int q = unbounded_column_;
      if (q < originals_) out.ray[q] = 1;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i] < originals_) out.ray[basis_[i]] = -a_[i][q];
      }
      return out;
    }
    out.status = LpStatus::kOptimal;
    out.value = value_;
    return out;
  }

 private:
  // Reduced costs and objective value for cost vector c at the current basis.
  void price(const std::vector<Rational>& c) {
    reduced_ = c;
    value_ = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rational& cb = c[basis_[i]];
      if (cb.is_zero()) continue;
      for (int j = 0; j < columns_; ++j) {
        if (!a_[i][j].is_zero()) reduced_[j] -= cb * a_[i][j];
      }
      value_ += cb * rhs_[i];
    }
  }

  void pivot(int r, int q) {
    const Rational inv = Rational(1) / a_[r][q];
    std::vector<int> nz;
    for (int j = 0; j < columns_; ++j) {
      if (a_[r][j].is_zero()) continue;
      a_[r][j] *= inv;
      nz.push_back(j);
    }
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (static_cast<int>(i) == r || a_[i][q].is_zero()) continue;
      const Rational f = a_[i][q];
      for (int j : nz) a_[i][j] -= f * a_[r][j];
      if (!rhs_[r].is_zero()) rhs_[i] -= f * rhs_[r];
    }
    if (!reduced_[q].is_zero()) {
      const Rational f = reduced_[q];
      for (int j : nz) reduced_[j] -= f * a_[r][j];
      value_ += f * rhs_[r];
    }
    basis_[r] = q;
  }

  // Bland's rule over columns [0, limit). Returns the pivot count on
  // optimality, nullopt on unboundedness (column kept in unbounded_column_).
  std::optional<int> run(int& pivots, int limit) {
    while (true) {
      int q = -1;
      for (int j = 0; j < limit; ++j) {
        if (reduced_[j].sign() > 0) {
          q = j;
          break;
        }
      }
      if (q < 0) return pivots;
      int r = -1;
      Rational best;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i][q].sign() <= 0) continue;
        Rational ratio = rhs_[i] / a_[i][q];
        if (r < 0 || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
          r = static_cast<int>(i);
          best = std::move(ratio);
        }
      }
      if (r < 0) {
        unbounded_column_ = q;
        return std::nullopt;
      }
      pivot(r, q);
      ++pivots;
    }
  }

  // Pivots zero-level artificials out of the basis; drops redundant rows.
  void evict_artificials(int& pivots) {
    for (std::size_t i = 0; i < basis_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      int q = -1;
      for (int j = 0; j < first_artificial_; ++j) {
        if (!a_[i][j].is_zero()) {
          q = j;
          break;
        }
      }
      if (q >= 0) {
        pivot(static_cast<int>(i), q);
        ++pivots;
        ++i;
      } else {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(originals_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] < originals_) x[basis_[i]] = rhs_[i];
    }
    return x;
  }

  int originals_;
  int columns_ = 0;
  int first_artificial_ = 0;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<Rational> reduced_;
  Rational value_;
  int unbounded_column_ = -1;
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp) {
  Tableau t(lp);
  return t.solve(lp);
}

}  // namespace ordmatch
