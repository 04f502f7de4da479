// Exact domain types for ordinal metric matching.
//
// Agents and items share a single 2n-point index space inside Metric:
// points 0..n-1 are agents, points n..2n-1 are items. Instances, matchings
// and fractional matchings only ever use item indices 0..n-1.

#ifndef ORDMATCH_CORE_H_
#define ORDMATCH_CORE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordmatch/errors.h"
#include "ordmatch/rational.h"

namespace ordmatch {

// n agents' complete preference lists over n items, most preferred first.
class Instance {
 public:
  explicit Instance(std::vector<std::vector<int>> prefs);

  int n() const { return static_cast<int>(prefs_.size()); }
  const std::vector<std::vector<int>>& prefs() const { return prefs_; }
  std::span<const int> list(int agent) const { return prefs_[agent]; }
  // Position of `item` in `agent`'s list (0 = favorite).
  int rank(int agent, int item) const { return rank_[agent * n() + item]; }
  bool prefers(int agent, int item, int other) const {
    return rank(agent, item) < rank(agent, other);
  }

  friend bool operator==(const Instance& a, const Instance& b) { return a.prefs_ == b.prefs_; }

 private:
  std::vector<std::vector<int>> prefs_;
  std::vector<int> rank_;
};

// Exact (pseudo)metric over the 2n agent and item points.
class Metric {
 public:
  // Validates zero diagonal, symmetry, nonnegativity and the triangle
  // inequality; throws InvalidInput otherwise.
  static Metric from_matrix(int n, std::vector<std::vector<Rational>> dist);
  // Skips validation; for callers that construct metrics by closure.
  static Metric trusted(int n, std::vector<Rational> flat);

  int n() const { return n_; }
  int points() const { return 2 * n_; }
  static int agent_point(int i) { return i; }
  int item_point(int j) const { return n_ + j; }

  const Rational& at(int x, int y) const { return dist_[x * points() + y]; }
  const Rational& agent_item(int agent, int item) const { return at(agent, n_ + item); }

  std::vector<std::vector<Rational>> to_matrix() const;

  friend bool operator==(const Metric& a, const Metric& b) {
    return a.n_ == b.n_ && a.dist_ == b.dist_;
  }

 private:
  Metric(int n, std::vector<Rational> flat) : n_(n), dist_(std::move(flat)) {}

  int n_;
  std::vector<Rational> dist_;
};

// Returns a description of the first violated metric axiom, if any.
std::optional<std::string> metric_violation(int n, const std::vector<std::vector<Rational>>& dist);

// Injective partial map agents -> items.
class Matching {
 public:
  static constexpr int kUnmatched = -1;

  Matching() = default;
  // All agents unmatched.
  explicit Matching(int n) : assign_(n, kUnmatched) {}
  // assign[i] is agent i's item or kUnmatched. Throws on collisions or
  // out-of-range items.
  explicit Matching(std::vector<int> assign);

  int n() const { return static_cast<int>(assign_.size()); }
  int item_of(int agent) const { return assign_[agent]; }
  bool matched(int agent) const { return assign_[agent] != kUnmatched; }
  int size() const;
  bool perfect() const { return size() == n(); }
  const std::vector<int>& assign() const { return assign_; }

  // Throws InvalidInput if the item is taken or the agent already matched.
  void match(int agent, int item);
  // Agent holding `item`, or kUnmatched.
  int agent_of(int item) const;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching& a, const Matching& b) { return a.assign_ <=> b.assign_; }

 private:
  std::vector<int> assign_;
};

// n x n matrix of match probabilities with entries in [0, 1] and all row
// and column sums at most 1.
class FractionalMatching {
 public:
  explicit FractionalMatching(std::vector<std::vector<Rational>> p);
  static FractionalMatching zero(int n);
  static FractionalMatching indicator(const Matching& m);
  static FractionalMatching uniform(int n);

  int n() const { return static_cast<int>(p_.size()); }
  const Rational& at(int agent, int item) const { return p_[agent][item]; }
  const std::vector<std::vector<Rational>>& rows() const { return p_; }

  bool doubly_stochastic() const;
  Rational total() const;

  friend bool operator==(const FractionalMatching&, const FractionalMatching&) = default;

 private:
  std::vector<std::vector<Rational>> p_;
};

// Undirected graph over the 2n agent/item points with nonnegative weights.
struct WeightedGraph {
  struct Edge {
    int u;
    int v;
    Rational weight;
  };

  explicit WeightedGraph(int n) : n(n) {}
  int points() const { return 2 * n; }
  void add_edge(int u, int v, Rational weight);
  void add_agent_item_edge(int agent, int item, Rational weight) {
    add_edge(agent, n + item, std::move(weight));
  }

  int n;
  std::vector<Edge> edges;
};

// Sum of d(a_i, b_j) over matched pairs; partial matchings contribute only
// their matched pairs.
Rational cost(const Matching& m, const Metric& d);

// Sum over i, j of p[i][j] * d(a_i, b_j).
Rational fractional_cost(const FractionalMatching& p, const Metric& d);

// Exact all-pairs shortest paths. Throws UnboundedDistance if disconnected.
Metric metric_from_graph(const WeightedGraph& g);

// Sorts each agent's items by increasing distance. Exact ties go to the
// lower tie key; by default the key is the item index.
Instance prefs_from_metric(const Metric& d, std::span<const int> tie_key = {});

// True iff every agent's list is weakly increasing in distance.
bool consistent(const Instance& inst, const Metric& d);

// Cut pseudo-metric: distance 1 between points on opposite sides of
// `in_s` (indexed by point), 0 otherwise.
Metric cut_metric(int n, const std::vector<bool>& in_s);

bool is_permutation(std::span<const int> perm, int n);
void require_permutation(std::span<const int> perm, int n, const char* what);

}  // namespace ordmatch

#endif  // ORDMATCH_CORE_H_
