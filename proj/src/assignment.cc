#include "ordmatch/assignment.h"

#include <functional>
#include <stdexcept>

#include "ordmatch/errors.h"

namespace ordmatch {
namespace {

struct Duals {
  std::vector<Rational> row;
  std::vector<Rational> col;
  std::vector<int> row_to_col;
};

// Shortest augmenting path Hungarian method (potentials form), O(n^3).
Duals hungarian(const std::vector<std::vector<Rational>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<Rational> u(n + 1), v(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<std::optional<Rational>> minv(n + 1);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      std::optional<Rational> delta;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Rational cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = std::move(cur);
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = *minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += *delta;
          v[j] -= *delta;
        } else {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Duals out;
  out.row.assign(u.begin() + 1, u.end());
  out.col.assign(v.begin() + 1, v.end());
  out.row_to_col.assign(n, -1);
  for (int j = 1; j <= n; ++j) out.row_to_col[p[j] - 1] = j - 1;
  return out;
}

// Kuhn's augmenting-path search over allowed edges, skipping rows flagged
// in `frozen`.
class Augmenter {
 public:
  Augmenter(const std::vector<std::vector<bool>>& allowed, std::vector<int>& row_to_col,
            std::vector<int>& col_to_row, const std::vector<char>& frozen)
      : allowed_(allowed), row_to_col_(row_to_col), col_to_row_(col_to_row), frozen_(frozen) {}

  // Finds an alternating path from free row `r` to free column `target`
  // (or any free column when target < 0) and flips it.
  bool augment(int r, int target) {
    seen_.assign(allowed_.size(), 0);
    return dfs(r, target);
  }

 private:
  bool dfs(int r, int target) {
    const int n = static_cast<int>(allowed_.size());
    for (int c = 0; c < n; ++c) {
      if (!allowed_[r][c] || seen_[c]) continue;
      seen_[c] = 1;
      const int owner = col_to_row_[c];
      bool ok = false;
      if (owner < 0) {
        ok = target < 0 || c == target;
      } else if (!frozen_[owner]) {
        ok = dfs(owner, target);
      }
      if (ok) {
        row_to_col_[r] = c;
        col_to_row_[c] = r;
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<bool>>& allowed_;
  std::vector<int>& row_to_col_;
  std::vector<int>& col_to_row_;
  const std::vector<char>& frozen_;
  std::vector<char> seen_;
};

}  // namespace

std::optional<std::vector<int>> lex_min_perfect_matching(
    const std::vector<std::vector<bool>>& allowed) {
  const int n = static_cast<int>(allowed.size());
  for (const auto& row : allowed) {
    if (static_cast<int>(row.size()) != n) throw InvalidInput("support matrix must be square");
  }
  std::vector<int> row_to_col(n, -1), col_to_row(n, -1);
  std::vector<char> frozen(n, 0);
  Augmenter aug(allowed, row_to_col, col_to_row, frozen);
  for (int r = 0; r < n; ++r) {
    if (!aug.augment(r, -1)) return std::nullopt;
  }
  // Greedy: give each row, in order, the smallest column that still extends
  // to a perfect matching. Re-routing is one alternating path search.
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (!allowed[r][c]) continue;
      const int owner = col_to_row[c];
      if (owner >= 0 && frozen[owner]) continue;
      if (owner == r) break;
      const std::vector<int> save_rc = row_to_col, save_cr = col_to_row;
      const int freed = row_to_col[r];
      frozen[r] = 1;
      row_to_col[r] = c;
      col_to_row[c] = r;
      col_to_row[freed] = -1;
      row_to_col[owner] = -1;
      if (aug.augment(owner, freed)) break;
      frozen[r] = 0;
      row_to_col = save_rc;
      col_to_row = save_cr;
    }
    frozen[r] = 1;
  }
  return row_to_col;
}

Assignment solve_assignment(const std::vector<std::vector<Rational>>& cost) {
  const int n = static_cast<int>(cost.size());
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != n) throw InvalidInput("cost matrix must be square");
  }
  if (n == 0) return {};
  const Duals duals = hungarian(cost);
  // Every optimal assignment lives on the tight edges of an optimal dual,
  // and every perfect matching on them is optimal.
  std::vector<std::vector<bool>> tight(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      tight[i][j] = (cost[i][j] - duals.row[i] - duals.col[j]).is_zero();
    }
  }
  auto lex = lex_min_perfect_matching(tight);
  if (!lex) throw std::logic_error("solve_assignment: tight graph lost its perfect matching");
  Assignment out;
  out.row_to_col = std::move(*lex);
  for (int i = 0; i < n; ++i) out.value += cost[i][out.row_to_col[i]];
  return out;
}

}  // namespace ordmatch
