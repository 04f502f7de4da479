#include "ordmatch/mechanisms.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ordmatch/permutation.h"
#include "ordmatch/random.h"
#include "ordmatch/thin.h"

namespace ordmatch {

Matching serial_dictatorship(const Instance& inst, const std::vector<int>& order, int limit) {
  const int n = inst.n();
  require_permutation(order, n, "serial dictatorship order");
  if (limit < 0 || limit > n) limit = n;
  Matching m(n);
  std::vector<char> taken(n, 0);
  for (int step = 0; step < limit; ++step) {
    const int agent = order[step];
    for (int item : inst.list(agent)) {
      if (!taken[item]) {
        taken[item] = 1;
        m.match(agent, item);
        break;
      }
    }
  }
  return m;
}

Matching rsd(const Instance& inst, std::uint64_t seed) {
  return truncated_rsd(inst, inst.n(), seed);
}

Matching truncated_rsd(const Instance& inst, int m, std::uint64_t seed) {
  if (m < 0 || m > inst.n()) throw InvalidInput("truncated_rsd: m must be in [0, n]");
  Rng rng(seed);
  return serial_dictatorship(inst, rng.permutation(inst.n()), m);
}

// ---------------------------------------------------------------------------
// RepMatch

RepMatchTrace rep_match_traced(const Instance& inst) {
  const int n = inst.n();
  std::vector<RepMatchSet> sets(n);
  for (int i = 0; i < n; ++i) sets[i] = {{i}, i, 0};
  RepMatchTrace trace;
  trace.states.push_back(sets);

  auto windows_meet = [&](const RepMatchSet& a, const RepMatchSet& b) {
    std::vector<char> in_a(n, 0);
    const auto la = inst.list(a.rep);
    for (std::size_t k = 0; k < a.agents.size(); ++k) in_a[la[k]] = 1;
    const auto lb = inst.list(b.rep);
    for (std::size_t k = 0; k < b.agents.size(); ++k) {
      if (in_a[lb[k]]) return true;
    }
    return false;
  };

  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < sets.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < sets.size() && !merged; ++j) {
        if (!windows_meet(sets[i], sets[j])) continue;
        RepMatchSet& a = sets[i];
        const RepMatchSet& b = sets[j];
        RepMatchSet joined;
        joined.agents = a.agents;
        joined.agents.insert(joined.agents.end(), b.agents.begin(), b.agents.end());
        std::sort(joined.agents.begin(), joined.agents.end());
        joined.rep = a.level >= b.level ? a.rep : b.rep;
        joined.level = a.level != b.level ? std::max(a.level, b.level) : a.level + 1;
        if (joined.level >= 31 ||
            static_cast<std::int64_t>(joined.agents.size()) < (std::int64_t{1} << joined.level)) {
          throw std::logic_error("rep_match: |S| >= 2^level violated");
        }
        a = std::move(joined);
        sets.erase(sets.begin() + static_cast<std::ptrdiff_t>(j));
        trace.states.push_back(sets);
        merged = true;
      }
    }
  }

  Matching m(n);
  for (const auto& s : sets) {
    const auto window = inst.list(s.rep);
    for (std::size_t k = 0; k < s.agents.size(); ++k) m.match(s.agents[k], window[k]);
  }
  if (!m.perfect()) throw std::logic_error("rep_match: final windows do not cover all items");
  trace.result = std::move(m);
  return trace;
}

Matching rep_match(const Instance& inst) { return rep_match_traced(inst).result; }

// ---------------------------------------------------------------------------
// Two-sided mechanisms

namespace {

std::vector<std::vector<int>> item_ranks(const std::vector<std::vector<int>>& item_prefs, int n) {
  if (static_cast<int>(item_prefs.size()) != n) {
    throw InvalidInput("item preferences: need one list per item");
  }
  std::vector<std::vector<int>> rank(n, std::vector<int>(n));
  for (int j = 0; j < n; ++j) {
    require_permutation(item_prefs[j], n, "item preference list");
    for (int k = 0; k < n; ++k) rank[j][item_prefs[j][k]] = k;
  }
  return rank;
}

}  // namespace

Matching deferred_acceptance(const Instance& inst, const std::vector<std::vector<int>>& item_prefs) {
  const int n = inst.n();
  const auto rank = item_ranks(item_prefs, n);
  std::vector<int> next(n, 0);      // next list position each agent proposes to
  std::vector<int> holder(n, -1);   // agent currently held by each item
  std::vector<int> held(n, -1);     // item currently holding each agent
  while (true) {
    std::vector<std::vector<int>> proposals(n);
    bool any = false;
    for (int a = 0; a < n; ++a) {
      if (held[a] >= 0) continue;
      if (next[a] >= n) throw std::logic_error("deferred_acceptance: agent exhausted its list");
      proposals[inst.list(a)[next[a]++]].push_back(a);
      any = true;
    }
    if (!any) break;
    for (int b = 0; b < n; ++b) {
      if (proposals[b].empty()) continue;
      int best = holder[b];
      for (int a : proposals[b]) {
        if (best < 0 || rank[b][a] < rank[b][best]) best = a;
      }
      if (holder[b] >= 0 && holder[b] != best) held[holder[b]] = -1;
      holder[b] = best;
      held[best] = b;
    }
  }
  return Matching(held);
}

Matching boston(const Instance& inst, const std::vector<int>& priority) {
  const int n = inst.n();
  require_permutation(priority, n, "boston priority");
  const std::vector<int> prio_rank = inverse(priority);
  Matching m(n);
  std::vector<char> item_taken(n, 0);
  for (int matched = 0; matched < n;) {
    std::vector<int> chosen(n, -1);
    for (int a = 0; a < n; ++a) {
      if (m.matched(a)) continue;
      for (int b : inst.list(a)) {
        if (item_taken[b]) continue;
        if (chosen[b] < 0 || prio_rank[a] < prio_rank[chosen[b]]) chosen[b] = a;
        break;
      }
    }
    for (int b = 0; b < n; ++b) {
      if (chosen[b] < 0) continue;
      m.match(chosen[b], b);
      item_taken[b] = 1;
      ++matched;
    }
  }
  return m;
}

std::vector<int> sd_on_items(const std::vector<std::vector<int>>& item_prefs) {
  const int n = static_cast<int>(item_prefs.size());
  std::vector<char> taken(n, 0);
  std::vector<int> pi(n, -1);
  for (int b = 0; b < n; ++b) {
    require_permutation(item_prefs[b], n, "item preference list");
    for (int a : item_prefs[b]) {
      if (!taken[a]) {
        taken[a] = 1;
        pi[b] = a;
        break;
      }
    }
  }
  return pi;
}

bool is_stable(const Instance& inst, const std::vector<std::vector<int>>& item_prefs,
               const Matching& m) {
  const int n = inst.n();
  const auto rank = item_ranks(item_prefs, n);
  if (!m.perfect()) return false;
  std::vector<int> owner(n);
  for (int a = 0; a < n; ++a) owner[m.item_of(a)] = a;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (inst.prefers(a, b, m.item_of(a)) && rank[b][a] < rank[b][owner[b]]) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Serializability

namespace {

// All lists over n items in which `head` precedes every item of `later`.
std::vector<std::vector<int>> lists_with_head_before(int n, int head, const std::vector<int>& later) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    int pos_head = 0;
    for (int k = 0; k < n; ++k) {
      if (p[k] == head) pos_head = k;
    }
    bool ok = true;
    for (int k = 0; k < pos_head && ok; ++k) {
      ok = std::find(later.begin(), later.end(), p[k]) == later.end();
    }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> sample_list_with_head_before(Rng& rng, int n, int head,
                                              const std::vector<int>& later) {
  std::vector<int> p = rng.permutation(n);
  // Swap head into the first slot occupied by {head} U later; each valid
  // list has exactly |later| + 1 preimages, so the result is uniform.
  int first = -1;
  int at_head = -1;
  for (int k = 0; k < n; ++k) {
    const bool member = p[k] == head || std::find(later.begin(), later.end(), p[k]) != later.end();
    if (member && first < 0) first = k;
    if (p[k] == head) at_head = k;
  }
  std::swap(p[first], p[at_head]);
  return p;
}

}  // namespace

SerializabilityResult serializability_check(const DeterministicMechanism& mech,
                                            const std::vector<int>& pi,
                                            const std::vector<int>& sigma, int n,
                                            int exhaustive_cap, int samples, std::uint64_t seed) {
  require_permutation(pi, n, "pi");
  require_permutation(sigma, n, "sigma");
  std::vector<int> expected(n);
  for (int i = 0; i < n; ++i) expected[pi[i]] = sigma[i];
  const Matching target(expected);

  std::vector<std::vector<int>> later(n);
  for (int i = 0; i < n; ++i) later[i].assign(sigma.begin() + i + 1, sigma.end());

  SerializabilityResult result;
  auto check = [&](std::vector<std::vector<int>> prefs) {
    Instance inst(std::move(prefs));
    ++result.instances_checked;
    if (mech(inst) != target) {
      result.serializable = false;
      result.counterexample = std::move(inst);
      return false;
    }
    return true;
  };

  if (n <= exhaustive_cap) {
    result.exhaustive = true;
    std::vector<std::vector<std::vector<int>>> choices(n);  // indexed by agent
    for (int i = 0; i < n; ++i) choices[pi[i]] = lists_with_head_before(n, sigma[i], later[i]);
    std::vector<std::size_t> odometer(n, 0);
    while (true) {
      std::vector<std::vector<int>> prefs(n);
      for (int a = 0; a < n; ++a) prefs[a] = choices[a][odometer[a]];
      if (!check(std::move(prefs))) return result;
      int pos = 0;
      while (pos < n && ++odometer[pos] == choices[pos].size()) odometer[pos++] = 0;
      if (pos == n) break;
    }
    return result;
  }

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    std::vector<std::vector<int>> prefs(n);
    for (int i = 0; i < n; ++i) {
      prefs[pi[i]] = sample_list_with_head_before(rng, n, sigma[i], later[i]);
    }
    if (!check(std::move(prefs))) return result;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Dispatch

bool MechanismSpec::randomized() const {
  return kind == MechanismKind::kRandomSerialDictatorship || kind == MechanismKind::kTruncatedRsd;
}

MechanismKind parse_mechanism(const std::string& name) {
  if (name == "sd") return MechanismKind::kSerialDictatorship;
  if (name == "rsd") return MechanismKind::kRandomSerialDictatorship;
  if (name == "trsd") return MechanismKind::kTruncatedRsd;
  if (name == "repmatch") return MechanismKind::kRepMatch;
  if (name == "da") return MechanismKind::kDeferredAcceptance;
  if (name == "boston") return MechanismKind::kBoston;
  if (name == "derand-rsd") return MechanismKind::kDerandomizedRsd;
  throw InvalidInput("unknown mechanism: " + name);
}

std::string mechanism_name(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kSerialDictatorship: return "sd";
    case MechanismKind::kRandomSerialDictatorship: return "rsd";
    case MechanismKind::kTruncatedRsd: return "trsd";
    case MechanismKind::kRepMatch: return "repmatch";
    case MechanismKind::kDeferredAcceptance: return "da";
    case MechanismKind::kBoston: return "boston";
    case MechanismKind::kDerandomizedRsd: return "derand-rsd";
  }
  return "?";
}

Matching run_mechanism(const MechanismSpec& spec, const Instance& inst) {
  const int n = inst.n();
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  const std::vector<int>& order = spec.order.empty() ? identity : spec.order;
  switch (spec.kind) {
    case MechanismKind::kSerialDictatorship:
      return serial_dictatorship(inst, order);
    case MechanismKind::kRandomSerialDictatorship:
      return rsd(inst, spec.seed);
    case MechanismKind::kTruncatedRsd:
      return truncated_rsd(inst, spec.m < 0 ? n : spec.m, spec.seed);
    case MechanismKind::kRepMatch:
      return rep_match(inst);
    case MechanismKind::kDeferredAcceptance: {
      if (!spec.item_prefs.empty()) return deferred_acceptance(inst, spec.item_prefs);
      return deferred_acceptance(inst, std::vector<std::vector<int>>(n, identity));
    }
    case MechanismKind::kBoston:
      return boston(inst, order);
    case MechanismKind::kDerandomizedRsd:
      return derandomized_rsd(inst);
  }
  throw InvalidInput("run_mechanism: unknown mechanism");
}

}  // namespace ordmatch
