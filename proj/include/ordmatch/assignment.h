// Bipartite matching primitives over exact costs.

#ifndef ORDMATCH_ASSIGNMENT_H_
#define ORDMATCH_ASSIGNMENT_H_

#include <optional>
#include <vector>

#include "ordmatch/rational.h"

namespace ordmatch {

struct Assignment {
  std::vector<int> row_to_col;
  Rational value;
};

// Minimum-cost perfect assignment of an n x n exact cost matrix. Among all
// optimal assignments the lexicographically smallest row_to_col is returned.
Assignment solve_assignment(const std::vector<std::vector<Rational>>& cost);

// Lexicographically smallest perfect matching (row_to_col) using only the
// allowed[i][j] edges, or nullopt if the support has none.
std::optional<std::vector<int>> lex_min_perfect_matching(
    const std::vector<std::vector<bool>>& allowed);

}  // namespace ordmatch

#endif  // ORDMATCH_ASSIGNMENT_H_
