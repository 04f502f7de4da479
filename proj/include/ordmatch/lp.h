// Exact linear programming over rationals.
//
// maximize c.x subject to rows (<=, >=, =) and x >= 0. Solved by a
// two-phase dense-tableau simplex with Bland's rule, so degenerate
// problems cannot cycle.

#ifndef ORDMATCH_LP_H_
#define ORDMATCH_LP_H_

#include <utility>
#include <vector>

#include "ordmatch/rational.h"

namespace ordmatch {

enum class Sense { kLe, kGe, kEq };

struct LinearTerm {
  int var;
  Rational coef;
};

struct LinearConstraint {
  std::vector<LinearTerm> terms;
  Sense sense = Sense::kLe;
  Rational rhs;
};

class LinearProgram {
 public:
  explicit LinearProgram(int variables = 0) : objective_(variables) {}

  int variables() const { return static_cast<int>(objective_.size()); }
  int add_variable();
  void set_objective(int var, Rational coef);
  void add_constraint(std::vector<LinearTerm> terms, Sense sense, Rational rhs);

  const std::vector<Rational>& objective() const { return objective_; }
  const std::vector<LinearConstraint>& constraints() const { return rows_; }

  // Left-hand side of a row evaluated at x.
  static Rational evaluate(const LinearConstraint& row, const std::vector<Rational>& x);
  bool feasible(const std::vector<Rational>& x) const;

 private:
  std::vector<Rational> objective_;
  std::vector<LinearConstraint> rows_;
};

enum class LpStatus { kOptimal, kUnbounded, kInfeasible };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;              // optimal objective (kOptimal)
  std::vector<Rational> x;     // optimal vertex (kOptimal), last feasible vertex (kUnbounded)
  std::vector<Rational> ray;   // improving direction (kUnbounded): x + t*ray feasible for t >= 0
  int pivots = 0;
};

LpResult lp_solve(const LinearProgram& lp);

}  // namespace ordmatch

#endif  // ORDMATCH_LP_H_
