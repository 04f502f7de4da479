#include "ordmatch/lp.h"

#include <gtest/gtest.h>

#include <optional>

#include "ordmatch/random.h"

namespace ordmatch {
namespace {

TEST(LpSolveTest, SingleVariableBound) {
  LinearProgram lp(1);
  lp.set_objective(0, 1);
  lp.add_constraint({{0, 1}}, Sense::kLe, 1);
  const LpResult r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, Rational(1));
  EXPECT_EQ(r.x, std::vector<Rational>{1});
}

TEST(LpSolveTest, ContradictoryBoundsAreInfeasible) {
  LinearProgram lp(1);
  lp.set_objective(0, 1);
  lp.add_constraint({{0, 1}}, Sense::kLe, 1);
  lp.add_constraint({{0, 1}}, Sense::kGe, 2);
  EXPECT_EQ(lp_solve(lp).status, LpStatus::kInfeasible);
}

TEST(LpSolveTest, UnboundedReturnsImprovingRay) {
  LinearProgram lp(2);
  lp.set_objective(0, 1);
  lp.set_objective(1, 1);
  lp.add_constraint({{0, 1}, {1, -1}}, Sense::kLe, 1);
  const LpResult r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::kUnbounded);
  ASSERT_EQ(r.ray.size(), 2u);
  EXPECT_GT(r.ray[0] + r.ray[1], Rational(0));
  for (int t : {1, 10, 1000}) {
    std::vector<Rational> y{r.x[0] + Rational(t) * r.ray[0], r.x[1] + Rational(t) * r.ray[1]};
    EXPECT_TRUE(lp.feasible(y));
  }
}

TEST(LpSolveTest, EqualityAndNegativeRightHandSide) {
  LinearProgram lp(2);
  lp.set_objective(0, 1);
  lp.add_constraint({{0, 1}, {1, 1}}, Sense::kEq, 3);
  lp.add_constraint({{0, -1}}, Sense::kLe, -1);
  lp.add_constraint({{1, 1}}, Sense::kGe, 1);
  const LpResult r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, Rational(2));
  EXPECT_TRUE(lp.feasible(r.x));
}

TEST(LpSolveTest, RedundantEqualityRows) {
  LinearProgram lp(2);
  lp.set_objective(0, 1);
  lp.add_constraint({{0, 1}, {1, 1}}, Sense::kEq, 2);
  lp.add_constraint({{0, 2}, {1, 2}}, Sense::kEq, 4);
  const LpResult r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, Rational(2));
}

// Classic example on which the largest-coefficient rule cycles.
TEST(LpSolveTest, DegenerateCyclingExample) {
  LinearProgram lp(4);
  lp.set_objective(0, Rational(3, 4));
  lp.set_objective(1, -20);
  lp.set_objective(2, Rational(1, 2));
  lp.set_objective(3, -6);
  lp.add_constraint({{0, Rational(1, 4)}, {1, -8}, {2, -1}, {3, 9}}, Sense::kLe, 0);
  lp.add_constraint({{0, Rational(1, 2)}, {1, -12}, {2, Rational(-1, 2)}, {3, 3}}, Sense::kLe, 0);
  lp.add_constraint({{2, 1}}, Sense::kLe, 1);
  const LpResult r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, Rational(5, 4));
  EXPECT_TRUE(lp.feasible(r.x));
}

TEST(LinearProgramTest, RejectsBadIndices) {
  LinearProgram lp(2);
  EXPECT_THROW(lp.add_constraint({{2, 1}}, Sense::kLe, 0), std::invalid_argument);
  EXPECT_THROW(lp.set_objective(-1, 1), std::invalid_argument);
  EXPECT_EQ(lp.add_variable(), 2);
}

// Solves the square system A x = b exactly; nullopt if singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  const int n = static_cast<int>(a.size());
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r) {
      if (!a[r][c].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return std::nullopt;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Rational f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (int r = 0; r < n; ++r) b[r] /= a[r][r];
  return b;
}

// Vertex-enumeration oracle: the best feasible point among all basic
// solutions of a bounded LP in `dim` variables.
std::optional<Rational> vertex_enumeration(const LinearProgram& lp) {
  const int dim = lp.variables();
  // Every inequality as a hyperplane, plus x_i = 0.
  std::vector<std::pair<std::vector<Rational>, Rational>> planes;
  for (const auto& row : lp.constraints()) {
    std::vector<Rational> a(dim);
    for (const auto& t : row.terms) a[t.var] += t.coef;
    planes.emplace_back(a, row.rhs);
  }
  for (int i = 0; i < dim; ++i) {
    std::vector<Rational> a(dim);
    a[i] = 1;
    planes.emplace_back(a, Rational(0));
  }
  const int m = static_cast<int>(planes.size());
  std::optional<Rational> best;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != dim) continue;
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (int k = 0; k < m; ++k) {
      if (mask >> k & 1) {
        a.push_back(planes[k].first);
        b.push_back(planes[k].second);
      }
    }
    const auto x = solve_square(a, b);
    if (!x || !lp.feasible(*x)) continue;
    Rational v;
    for (int i = 0; i < dim; ++i) v += lp.objective()[i] * (*x)[i];
    if (!best || v > *best) best = v;
  }
  return best;
}

TEST(LpSolveTest, MatchesVertexEnumerationOnRandomBoxedPrograms) {
  Rng rng(31);
  int optimal = 0;
  for (int t = 0; t < 300; ++t) {
    const int dim = 2 + static_cast<int>(rng.below(2));
    LinearProgram lp(dim);
    for (int i = 0; i < dim; ++i) lp.set_objective(i, Rational(rng.between(-5, 5)));
    const int rows = 2 + static_cast<int>(rng.below(3));
    for (int r = 0; r < rows; ++r) {
      std::vector<LinearTerm> terms;
      for (int i = 0; i < dim; ++i) terms.push_back({i, Rational(rng.between(-4, 4))});
      const Sense sense = rng.below(4) == 0 ? Sense::kGe : Sense::kLe;
      lp.add_constraint(terms, sense, Rational(rng.between(-3, 8)));
    }
    for (int i = 0; i < dim; ++i) lp.add_constraint({{i, 1}}, Sense::kLe, 10);
    const auto expected = vertex_enumeration(lp);
    const LpResult r = lp_solve(lp);
    if (!expected) {
      EXPECT_EQ(r.status, LpStatus::kInfeasible) << t;
      continue;
    }
    ASSERT_EQ(r.status, LpStatus::kOptimal) << t;
    EXPECT_EQ(r.value, *expected) << t;
    EXPECT_TRUE(lp.feasible(r.x));
    ++optimal;
  }
  EXPECT_GT(optimal, 100);
}

}  // namespace
}  // namespace ordmatch
