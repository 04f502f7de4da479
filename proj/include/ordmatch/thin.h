// Thin matchings.
//
// A perfect matching M is beta-thin with respect to a fractional matching
// p if, for every cut (S, S') of the 2n points, the number of M edges
// crossing the cut is at most beta times the p-weight crossing it.

#ifndef ORDMATCH_THIN_H_
#define ORDMATCH_THIN_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "ordmatch/core.h"
#include "ordmatch/extended.h"

namespace ordmatch {

// Largest number of points for which all 2^(points-1) - 1 cuts are tried.
inline constexpr int kThinnessPointCap = 24;

struct ThinnessReport {
  ExtRational beta;               // 0 when no cut is crossed by M or p
  std::vector<bool> witness_cut;  // indexed by point, true on the S side
  int crossing_edges = 0;         // M edges across the witness cut
  Rational crossing_weight;       // p weight across the witness cut
  bool fundamental_cuts_only = false;
  std::int64_t cuts_examined = 0;
};

// Maximum over cuts of |M across| / p(across), skipping cuts that neither
// crosses. When supp(M) is inside supp(p), only cuts splitting a single
// connected component of supp(p) are tried; otherwise all cuts are, up to
// kThinnessPointCap points (CapExceeded beyond).
ThinnessReport thinness(const FractionalMatching& p, const Matching& m);
// Serial reference: ascending cut masks, every cut recomputed from scratch.
ThinnessReport thinness_serial(const FractionalMatching& p, const Matching& m);

// M edges and p weight crossing the cut `in_s` (indexed by point).
std::pair<int, Rational> cut_crossing(const FractionalMatching& p, const Matching& m,
                                      const std::vector<bool>& in_s);

// Lexicographically smallest perfect matching among edges with
// p[i][j] >= 1/n^2. Throws InvalidInput unless p is doubly stochastic.
Matching hall_round(const FractionalMatching& p);

struct DerandomizeOptions {
  int exact_cap = 8;        // exact marginals up to this n
  int trials = 20000;       // Monte Carlo trials above it
  std::uint64_t seed = 1;
};

// Hall rounding of the RSD marginals.
Matching derandomized_rsd(const Instance& inst, const DerandomizeOptions& options = {});

struct BvnTerm {
  Rational weight;
  Matching matching;
};

struct BvnDecomposition {
  std::vector<BvnTerm> terms;

  // Sum of weight * indicator over the terms.
  FractionalMatching reassemble(int n) const;
};

// Repeatedly removes the lexicographically smallest perfect matching in the
// remaining support, weighted by its smallest entry.
BvnDecomposition bvn_decompose(const FractionalMatching& p);

// Disjoint union of `copies` cycles of length 4k. Cycle vertex v = 1..4k of
// copy r is agent r*2k + (v-1)/2 when v is odd and item r*2k + v/2 - 1 when
// v is even. Edges (v, v+1) with v odd carry weight 1 - q, the others q.
struct CycleCounterexample {
  int k = 0;
  int copies = 0;
  Rational q;
  FractionalMatching p = FractionalMatching::zero(1);
  Matching odd;    // edges (v, v+1), v odd
  Matching even;   // edges (v, v+1), v even, and (4k, 1)
  std::vector<bool> cut;  // v mod 4 in {1, 2}, in every copy; indexed by point

  int n() const { return 2 * k * copies; }
  int point(int copy, int v) const;
  std::vector<bool> copy_cut(int copy) const;
};

CycleCounterexample cycle_counterexample(int k, const Rational& q, int copies);

// Probability that at least one copy draws `even` when each copy samples a
// matching independently from its own BvN decomposition.
Rational even_side_probability(const CycleCounterexample& c);

inline constexpr int kThinSearchCap = 5;

// First perfect matching in lexicographic order with thinness <= beta.
std::optional<Matching> thin_search(const FractionalMatching& p, const Rational& beta);

}  // namespace ordmatch

#endif  // ORDMATCH_THIN_H_
