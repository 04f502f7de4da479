#include "ordmatch/thin.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ordmatch/assignment.h"
#include "ordmatch/mechanisms.h"
#include "ordmatch/permutation.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ordmatch {
namespace {

struct CutEdge {
  int u;  // local point indices
  int v;
  bool in_matching;
  Rational weight;
};

// Cuts of a point set with local point 0 pinned to S. Mask bit b puts
// local point b + 1 in S; the all-ones mask (no cut) is skipped.
struct CutProblem {
  std::vector<int> points;  // local -> global
  std::vector<CutEdge> edges;

  int size() const { return static_cast<int>(points.size()); }
  std::uint64_t masks() const { return (std::uint64_t{1} << (size() - 1)) - 1; }
};

// Best cut found so far. Larger ratio wins; equal ratios keep the smaller mask.
struct CutBest {
  bool found = false;
  bool infinite = false;
  std::int64_t edges = 0;
  Rational weight;
  std::uint64_t mask = 0;
};

template <typename Weight>
bool better(std::int64_t edges, const Weight& weight, std::uint64_t mask, bool have,
            std::int64_t best_edges, const Weight& best_weight, std::uint64_t best_mask) {
  if (!have) return true;
  const bool inf = weight == Weight(0);
  const bool best_inf = best_weight == Weight(0);
  if (inf != best_inf) return inf;
  if (!inf) {
    const auto lhs = static_cast<__int128>(0) + edges * best_weight;
    const auto rhs = static_cast<__int128>(0) + best_edges * weight;
    if (lhs != rhs) return lhs > rhs;
  }
  return mask < best_mask;
}

// Rational specialization of the comparison (no __int128 mixing).
bool better_exact(std::int64_t edges, const Rational& weight, std::uint64_t mask,
                  const CutBest& best) {
  if (!best.found) return true;
  const bool inf = weight.is_zero();
  if (inf != best.infinite) return inf;
  if (!inf) {
    const Rational lhs = Rational(edges) * best.weight;
    const Rational rhs = Rational(best.edges) * weight;
    if (lhs != rhs) return lhs > rhs;
  }
  return mask < best.mask;
}

CutBest solve_serial(const CutProblem& prob, std::int64_t& examined) {
  CutBest best;
  const int s = prob.size();
  std::vector<char> side(s);
  for (std::uint64_t mask = 0; mask < prob.masks(); ++mask) {
    side[0] = 1;
    for (int b = 1; b < s; ++b) side[b] = (mask >> (b - 1)) & 1;
    std::int64_t edges = 0;
    Rational weight;
    for (const auto& e : prob.edges) {
      if (side[e.u] == side[e.v]) continue;
      edges += e.in_matching;
      weight += e.weight;
    }
    ++examined;
    if (edges == 0 && weight.is_zero()) continue;
    if (better_exact(edges, weight, mask, best)) {
      best = {true, weight.is_zero(), edges, weight, mask};
    }
  }
  return best;
}

// Integer weights sharing one denominator, when they fit comfortably.
std::optional<std::pair<std::vector<std::int64_t>, std::int64_t>> scaled_weights(
    const CutProblem& prob) {
  constexpr std::int64_t kLimit = std::int64_t{1} << 40;
  std::int64_t scale = 1;
  for (const auto& e : prob.edges) {
    if (!e.weight.is_small()) return std::nullopt;
    const std::int64_t den = e.weight.small_den();
    scale = std::lcm(scale, den);
    if (scale > kLimit) return std::nullopt;
  }
  std::vector<std::int64_t> w;
  std::int64_t total = 0;
  for (const auto& e : prob.edges) {
    w.push_back(e.weight.small_num() * (scale / e.weight.small_den()));
    total += w.back();
    if (total > kLimit) return std::nullopt;
  }
  return std::make_pair(std::move(w), scale);
}

CutBest solve_parallel(const CutProblem& prob, std::int64_t& examined) {
  const auto scaled = scaled_weights(prob);
  if (!scaled) return solve_serial(prob, examined);
  const auto& [weights, scale] = *scaled;
  const int s = prob.size();
  struct Incident {
    int other;
    int edge;
  };
  std::vector<std::vector<Incident>> adj(s);
  for (int e = 0; e < static_cast<int>(prob.edges.size()); ++e) {
    adj[prob.edges[e].u].push_back({prob.edges[e].v, e});
    adj[prob.edges[e].v].push_back({prob.edges[e].u, e});
  }
  const std::uint64_t total = std::uint64_t{1} << (s - 1);
  const std::uint64_t skip = total - 1;

  struct Local {
    bool found = false;
    std::int64_t edges = 0;
    std::int64_t weight = 0;
    std::uint64_t mask = 0;
    std::int64_t examined = 0;
  };
  std::vector<Local> locals;
#pragma omp parallel
  {
    int threads = 1;
    int tid = 0;
#ifdef _OPENMP
    threads = omp_get_num_threads();
    tid = omp_get_thread_num();
#endif
#pragma omp single
    locals.resize(threads);
    const std::uint64_t lo = total * tid / threads;
    const std::uint64_t hi = total * (tid + 1) / threads;
    Local best;
    if (lo < hi) {
      std::vector<char> side(s);
      std::uint64_t gray = lo ^ (lo >> 1);
      side[0] = 1;
      for (int b = 1; b < s; ++b) side[b] = (gray >> (b - 1)) & 1;
      std::int64_t edges = 0, weight = 0;
      for (std::size_t e = 0; e < prob.edges.size(); ++e) {
        if (side[prob.edges[e].u] == side[prob.edges[e].v]) continue;
        edges += prob.edges[e].in_matching;
        weight += weights[e];
      }
      for (std::uint64_t i = lo; i < hi; ++i) {
        if (gray != skip) {
          ++best.examined;
          if ((edges != 0 || weight != 0) &&
              better<std::int64_t>(edges, weight, gray, best.found, best.edges, best.weight,
                                   best.mask)) {
            best.found = true;
            best.edges = edges;
            best.weight = weight;
            best.mask = gray;
          }
        }
        if (i + 1 == hi) break;
        const int x = std::countr_zero(i + 1) + 1;
        for (const auto& inc : adj[x]) {
          const CutEdge& e = prob.edges[inc.edge];
          const int sign = side[x] != side[inc.other] ? -1 : 1;
          edges += sign * static_cast<std::int64_t>(e.in_matching);
          weight += sign * weights[inc.edge];
        }
        side[x] ^= 1;
        gray ^= std::uint64_t{1} << (x - 1);
      }
    }
    locals[tid] = best;
  }
  Local merged;
  for (const auto& l : locals) {
    examined += l.examined;
    if (l.found && better<std::int64_t>(l.edges, l.weight, l.mask, merged.found, merged.edges,
                                        merged.weight, merged.mask)) {
      merged = l;
    }
  }
  CutBest out;
  if (merged.found) {
    out = {true, merged.weight == 0, merged.edges, Rational(merged.weight, scale), merged.mask};
  }
  return out;
}

void require_shapes(const FractionalMatching& p, const Matching& m) {
  if (p.n() != m.n()) throw InvalidInput("thinness: matching and fractional matching sizes differ");
  if (!m.perfect()) throw InvalidInput("thinness: matching must be perfect");
}

// Connected components of supp(p) over the 2n points, each sorted.
std::vector<std::vector<int>> support_components(const FractionalMatching& p) {
  const int n = p.n();
  std::vector<int> parent(2 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!p.at(i, j).is_zero()) parent[find(i)] = find(n + j);
    }
  }
  std::vector<std::vector<int>> by_root(2 * n);
  for (int x = 0; x < 2 * n; ++x) by_root[find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < 2 * n; ++x) {
    if (!by_root[x].empty()) out.push_back(std::move(by_root[x]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

CutProblem make_problem(const FractionalMatching& p, const Matching& m,
                        const std::vector<int>& points) {
  const int n = p.n();
  CutProblem prob;
  prob.points = points;
  std::vector<int> local(2 * n, -1);
  for (int k = 0; k < static_cast<int>(points.size()); ++k) local[points[k]] = k;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool in_m = m.item_of(i) == j;
      if (!in_m && p.at(i, j).is_zero()) continue;
      if (local[i] < 0 || local[n + j] < 0) continue;
      prob.edges.push_back({local[i], local[n + j], in_m, p.at(i, j)});
    }
  }
  return prob;
}

ThinnessReport measure(const FractionalMatching& p, const Matching& m, bool parallel) {
  require_shapes(p, m);
  const int n = p.n();
  bool inside = true;
  for (int i = 0; i < n; ++i) inside = inside && !p.at(i, m.item_of(i)).is_zero();

  std::vector<std::vector<int>> groups;
  if (inside) {
    groups = support_components(p);
  } else {
    std::vector<int> all(2 * n);
    std::iota(all.begin(), all.end(), 0);
    groups.push_back(std::move(all));
  }

  ThinnessReport report;
  report.fundamental_cuts_only = inside;
  report.witness_cut.assign(2 * n, false);
  CutBest best;
  const CutProblem* best_prob = nullptr;
  std::vector<CutProblem> problems;
  problems.reserve(groups.size());
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    if (static_cast<int>(g.size()) > kThinnessPointCap) {
      throw CapExceeded("thinness: " + std::to_string(g.size()) + " points exceed the cap of " +
                        std::to_string(kThinnessPointCap) +
                        (inside ? " in one support component" : " without the support precondition"));
    }
    problems.push_back(make_problem(p, m, g));
    const CutProblem& prob = problems.back();
    const CutBest b = parallel ? solve_parallel(prob, report.cuts_examined)
                               : solve_serial(prob, report.cuts_examined);
    if (!b.found) continue;
    // Across components, the first group wins ties.
    const bool wins = !best.found || (b.infinite != best.infinite
                                          ? b.infinite
                                          : !b.infinite && Rational(b.edges) * best.weight >
                                                               Rational(best.edges) * b.weight);
    if (wins) {
      best = b;
      best_prob = &prob;
    }
  }
  if (!best.found) {
    report.beta = Rational(0);
    return report;
  }
  report.beta = best.infinite ? ExtRational::infinity()
                              : ExtRational(Rational(best.edges) / best.weight);
  report.witness_cut[best_prob->points[0]] = true;
  for (int b = 1; b < best_prob->size(); ++b) {
    report.witness_cut[best_prob->points[b]] = (best.mask >> (b - 1)) & 1;
  }
  report.crossing_edges = static_cast<int>(best.edges);
  report.crossing_weight = best.weight;
  return report;
}

void require_doubly_stochastic(const FractionalMatching& p, const char* what) {
  if (!p.doubly_stochastic()) {
    throw InvalidInput(std::string(what) + ": fractional matching must be doubly stochastic");
  }
}

}  // namespace

std::pair<int, Rational> cut_crossing(const FractionalMatching& p, const Matching& m,
                                      const std::vector<bool>& in_s) {
  require_shapes(p, m);
  const int n = p.n();
  if (static_cast<int>(in_s.size()) != 2 * n) throw InvalidInput("cut must cover all 2n points");
  int edges = 0;
  Rational weight;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (in_s[i] == in_s[n + j]) continue;
      edges += m.item_of(i) == j;
      weight += p.at(i, j);
    }
  }
  return {edges, weight};
}

ThinnessReport thinness(const FractionalMatching& p, const Matching& m) {
  return measure(p, m, true);
}

ThinnessReport thinness_serial(const FractionalMatching& p, const Matching& m) {
  return measure(p, m, false);
}

Matching hall_round(const FractionalMatching& p) {
  require_doubly_stochastic(p, "hall_round");
  const int n = p.n();
  const Rational threshold(1, static_cast<std::int64_t>(n) * n);
  std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) allowed[i][j] = p.at(i, j) >= threshold;
  }
  auto m = lex_min_perfect_matching(allowed);
  if (!m) throw std::logic_error("hall_round: threshold support has no perfect matching");
  return Matching(std::move(*m));
}

Matching derandomized_rsd(const Instance& inst, const DerandomizeOptions& options) {
  const int n = inst.n();
  if (n <= options.exact_cap) return hall_round(exact_rsd_marginals(inst, n, options.exact_cap));
  return hall_round(monte_carlo_marginals(inst, n, options.trials, options.seed));
}

FractionalMatching BvnDecomposition::reassemble(int n) const {
  std::vector<std::vector<Rational>> p(n, std::vector<Rational>(n));
  for (const auto& t : terms) {
    for (int i = 0; i < n; ++i) p[i][t.matching.item_of(i)] += t.weight;
  }
  return FractionalMatching(std::move(p));
}

BvnDecomposition bvn_decompose(const FractionalMatching& p) {
  require_doubly_stochastic(p, "bvn_decompose");
  const int n = p.n();
  std::vector<std::vector<Rational>> rest = p.rows();
  BvnDecomposition out;
  while (true) {
    std::vector<std::vector<bool>> support(n, std::vector<bool>(n));
    bool any = false;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        support[i][j] = rest[i][j].sign() > 0;
        any = any || support[i][j];
      }
    }
    if (!any) break;
    auto m = lex_min_perfect_matching(support);
    if (!m) throw std::logic_error("bvn_decompose: residual lost its perfect matching");
    Rational w = rest[0][(*m)[0]];
    for (int i = 1; i < n; ++i) w = min(w, rest[i][(*m)[i]]);
    for (int i = 0; i < n; ++i) rest[i][(*m)[i]] -= w;
    out.terms.push_back({std::move(w), Matching(std::move(*m))});
    if (static_cast<int>(out.terms.size()) > n * n) {
      throw std::logic_error("bvn_decompose: more than n^2 terms");
    }
  }
  return out;
}

int CycleCounterexample::point(int copy, int v) const {
  const int base = copy * 2 * k;
  return v % 2 == 1 ? base + (v - 1) / 2 : n() + base + v / 2 - 1;
}

std::vector<bool> CycleCounterexample::copy_cut(int copy) const {
  std::vector<bool> s(2 * n(), false);
  for (int v = 1; v <= 4 * k; ++v) s[point(copy, v)] = v % 4 == 1 || v % 4 == 2;
  return s;
}

CycleCounterexample cycle_counterexample(int k, const Rational& q, int copies) {
  if (k < 1 || copies < 1) throw InvalidInput("cycle_counterexample: need k >= 1 and copies >= 1");
  if (q.sign() <= 0 || q >= 1) throw InvalidInput("cycle_counterexample: q must lie in (0, 1)");
  CycleCounterexample c;
  c.k = k;
  c.copies = copies;
  c.q = q;
  const int n = c.n();
  std::vector<std::vector<Rational>> p(n, std::vector<Rational>(n));
  std::vector<int> odd(n), even(n);
  c.cut.assign(2 * n, false);
  for (int r = 0; r < copies; ++r) {
    for (int v = 1; v <= 4 * k; ++v) {
      const int w = v == 4 * k ? 1 : v + 1;
      const int agent = v % 2 == 1 ? c.point(r, v) : c.point(r, w);
      const int item = (v % 2 == 1 ? c.point(r, w) : c.point(r, v)) - n;
      if (v % 2 == 1) {
        p[agent][item] += Rational(1) - q;
        odd[agent] = item;
      } else {
        p[agent][item] += q;
        even[agent] = item;
      }
      c.cut[c.point(r, v)] = v % 4 == 1 || v % 4 == 2;
    }
  }
  c.p = FractionalMatching(std::move(p));
  c.odd = Matching(std::move(odd));
  c.even = Matching(std::move(even));
  return c;
}

Rational even_side_probability(const CycleCounterexample& c) {
  const int block = 2 * c.k;
  Rational none_even = 1;
  for (int r = 0; r < c.copies; ++r) {
    std::vector<std::vector<Rational>> sub(block, std::vector<Rational>(block));
    for (int i = 0; i < block; ++i) {
      for (int j = 0; j < block; ++j) sub[i][j] = c.p.at(r * block + i, r * block + j);
    }
    Rational even_weight;
    for (const auto& t : bvn_decompose(FractionalMatching(std::move(sub))).terms) {
      bool is_even = true;
      for (int i = 0; i < block; ++i) {
        is_even = is_even && t.matching.item_of(i) + r * block == c.even.item_of(r * block + i);
      }
      if (is_even) even_weight += t.weight;
    }
    none_even *= Rational(1) - even_weight;
  }
  return Rational(1) - none_even;
}

std::optional<Matching> thin_search(const FractionalMatching& p, const Rational& beta) {
  const int n = p.n();
  if (n > kThinSearchCap) {
    throw CapExceeded("thin_search enumerates n! matchings; n = " + std::to_string(n) +
                      " exceeds the cap of " + std::to_string(kThinSearchCap));
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Matching m(perm);
    if (thinness(p, m).beta <= ExtRational(beta)) return m;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace ordmatch
