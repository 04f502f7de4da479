// Distortion evaluation.
//
// The adversarial oracle maximizes cost(M) / cost(OPT) over every metric
// consistent with an instance. For each candidate optimum M* it solves
//
//   maximize cost(M)  s.t.  cost(M*) = 1, ordinal chains, metric rows
//
// and the distortion is the largest of these values. Ordinal rows are weak
// inequalities, so the supremum is attained.
//
// Two LP formulations are available. kBipartite uses only the n^2
// agent-item distances and adds 4-cycle rows d(a,b) <= d(a,b') + d(a',b') +
// d(a',b) lazily; these rows are exactly what is needed for the values to
// be the shortest-path metric of K_{n,n}. kFullMetric uses all pairwise
// distances over the 2n points and every triangle row up front; it is
// slower and exists as an independent cross-check.

#ifndef ORDMATCH_DISTORTION_H_
#define ORDMATCH_DISTORTION_H_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ordmatch/core.h"
#include "ordmatch/extended.h"
#include "ordmatch/lp.h"
#include "ordmatch/mechanisms.h"

namespace ordmatch {

// Minimum-cost perfect matching; among optimal ones the lexicographically
// smallest assignment.
std::pair<Matching, Rational> min_cost_matching(const Metric& d);

inline constexpr int kAdversarialCap = 6;

enum class Formulation { kBipartite, kFullMetric };

struct DistortionOptions {
  int cap = kAdversarialCap;
  Formulation formulation = Formulation::kBipartite;
  // After the value is known, also maximize a uniform margin delta <= 1 by
  // which every adjacent pair in every list is separated.
  bool strict = false;
};

struct DistortionReport {
  ExtRational value;
  // Finite value: a maximizing metric. Infinite value: a consistent metric
  // under which witness_opt costs 0 and the evaluated matching does not.
  Metric witness_metric = Metric::trusted(1, std::vector<Rational>(4));
  Matching witness_opt;
  Rational mechanism_cost;  // under witness_metric
  Rational opt_cost;        // under witness_metric
  // Strict mode only: the largest achievable uniform margin at this value.
  std::optional<Rational> strict_margin;
  std::int64_t lps_solved = 0;
};

// Throws InvalidInput unless m is perfect, CapExceeded above options.cap.
DistortionReport adversarial_distortion(const Instance& inst, const Matching& m,
                                        const DistortionOptions& options = {});
DistortionReport adversarial_distortion_fractional(const Instance& inst,
                                                   const FractionalMatching& p,
                                                   const DistortionOptions& options = {});
// Serial twins of the OpenMP versions above.
DistortionReport adversarial_distortion_serial(const Instance& inst, const Matching& m,
                                               const DistortionOptions& options = {});
DistortionReport adversarial_distortion_fractional_serial(const Instance& inst,
                                                          const FractionalMatching& p,
                                                          const DistortionOptions& options = {});

// Value of the adversary's LP for one fixed candidate optimum.
struct CandidateValue {
  ExtRational value;
  std::vector<Rational> distances;  // agent-item distances, row-major (vertex or ray)
  std::int64_t lps_solved = 0;
};
CandidateValue candidate_value(const Instance& inst, const std::vector<std::vector<Rational>>& weights,
                               const std::vector<int>& candidate, Formulation formulation);

enum class EvalMode { kExact, kMonteCarlo };

struct ExpectedDistortion {
  Rational expected_cost;  // exact mean (kExact) or sample mean (kMonteCarlo)
  Rational opt_cost;
  ExtRational ratio;       // expected_cost / opt_cost; 1 when both are 0
  double half_width = 0;   // 95% normal half-width of the ratio (kMonteCarlo)
  std::int64_t samples = 0;
};

inline constexpr int kExactEvaluationCap = 8;

// E[cost] of a mechanism under a known metric. Exact mode averages over all
// n! orders for order-driven randomized mechanisms (n <= 8). Monte Carlo
// mode runs `trials` independent draws from sub-streams of spec.seed.
// Throws InvalidInput if d is inconsistent with inst.
ExpectedDistortion expected_distortion_known_metric(const MechanismSpec& spec, const Instance& inst,
                                                    const Metric& d, EvalMode mode,
                                                    int trials = 10000);

}  // namespace ordmatch

#endif  // ORDMATCH_DISTORTION_H_
