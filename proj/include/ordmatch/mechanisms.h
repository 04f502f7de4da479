// Ordinal matching mechanisms.
//
// Deterministic mechanisms are plain functions of the instance and their
// fixed parameters. Randomized ones take an explicit seed; the output is a
// pure function of (instance, parameters, seed).

#ifndef ORDMATCH_MECHANISMS_H_
#define ORDMATCH_MECHANISMS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ordmatch/core.h"

namespace ordmatch {

// Agents pick in `order`; each takes the first untaken item on its list.
// Stops after `limit` agents when limit >= 0.
Matching serial_dictatorship(const Instance& inst, const std::vector<int>& order, int limit = -1);

Matching rsd(const Instance& inst, std::uint64_t seed);

// RSD halted once m agents are matched. Throws InvalidInput if m > n.
Matching truncated_rsd(const Instance& inst, int m, std::uint64_t seed);

// Default cap on n for the n!-order enumeration.
inline constexpr int kExactMarginalCap = 8;

// P[agent i gets item j] under TruncatedRSD(m), exactly, by enumerating all
// n! orders. Throws CapExceeded above `cap`.
FractionalMatching exact_rsd_marginals(const Instance& inst, int m, int cap = kExactMarginalCap);
// Serial twin of the OpenMP kernel above; identical output.
FractionalMatching exact_rsd_marginals_serial(const Instance& inst, int m,
                                              int cap = kExactMarginalCap);

// Average of h TruncatedRSD indicator matrices. Trial t draws from
// sub-stream t of `seed`, so the result does not depend on scheduling.
FractionalMatching monte_carlo_marginals(const Instance& inst, int m, int trials,
                                         std::uint64_t seed);
FractionalMatching monte_carlo_marginals_serial(const Instance& inst, int m, int trials,
                                                std::uint64_t seed);

// State of the representative-merging mechanism.
struct RepMatchSet {
  std::vector<int> agents;  // ascending
  int rep = 0;
  int level = 0;
};

struct RepMatchTrace {
  std::vector<std::vector<RepMatchSet>> states;  // after initialization and each merge
  Matching result;
};

// Merges sets whose representatives' top-|S| windows intersect (lowest
// index pair first), then gives each set its representative's top-|S|
// items, agents in ascending index taking items in list order.
Matching rep_match(const Instance& inst);
RepMatchTrace rep_match_traced(const Instance& inst);

// Agent-proposing deferred acceptance. item_prefs[j] ranks agents for item
// j, most preferred first. All free agents propose simultaneously each round.
Matching deferred_acceptance(const Instance& inst, const std::vector<std::vector<int>>& item_prefs);

// Round-based immediate acceptance. Each round every unmatched agent
// proposes to its favorite item that is still unmatched; each item with
// proposers keeps the one earliest in `priority` for good.
Matching boston(const Instance& inst, const std::vector<int>& priority);

// Items b_0, b_1, ... in order each take their favorite remaining agent;
// pi[i] is the agent taken by item i.
std::vector<int> sd_on_items(const std::vector<std::vector<int>>& item_prefs);

// True iff no agent-item pair prefer each other over their assignment.
bool is_stable(const Instance& inst, const std::vector<std::vector<int>>& item_prefs,
               const Matching& m);

using DeterministicMechanism = std::function<Matching(const Instance&)>;

struct SerializabilityResult {
  bool serializable = true;
  std::int64_t instances_checked = 0;
  bool exhaustive = false;
  std::optional<Instance> counterexample;
};

// Checks that `mech` maps every instance in which agent pi[i] prefers
// sigma[i] over every sigma[j], j > i, to {pi[i] -> sigma[i]}. Enumerates
// all such instances for n <= exhaustive_cap, else samples `samples` of
// them uniformly with `seed`.
SerializabilityResult serializability_check(const DeterministicMechanism& mech,
                                            const std::vector<int>& pi,
                                            const std::vector<int>& sigma, int n,
                                            int exhaustive_cap = 4, int samples = 10000,
                                            std::uint64_t seed = 1);

// Mechanism selector used by the CLI and the known-metric evaluator.
enum class MechanismKind {
  kSerialDictatorship,
  kRandomSerialDictatorship,
  kTruncatedRsd,
  kRepMatch,
  kDeferredAcceptance,
  kBoston,
  kDerandomizedRsd,
};

struct MechanismSpec {
  MechanismKind kind = MechanismKind::kSerialDictatorship;
  std::vector<int> order;                     // SD order / Boston priority; empty = identity
  std::vector<std::vector<int>> item_prefs;   // DA; empty = identity for every item
  int m = -1;                                 // TruncatedRSD size; -1 = n
  std::uint64_t seed = 0;

  bool randomized() const;
};

MechanismKind parse_mechanism(const std::string& name);
std::string mechanism_name(MechanismKind kind);

// Runs the mechanism once (randomized ones use spec.seed).
Matching run_mechanism(const MechanismSpec& spec, const Instance& inst);

}  // namespace ordmatch

#endif  // ORDMATCH_MECHANISMS_H_
