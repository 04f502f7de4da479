// Instance families: the binary-tree lower-bound family with its per-agent
// adversary metrics, the line instances on which serial mechanisms pay
// 2^n - 1, the Boston cascade line, and seeded random sources.

#ifndef ORDMATCH_GENERATORS_H_
#define ORDMATCH_GENERATORS_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "ordmatch/core.h"

namespace ordmatch {

// One internal vertex (= item) of the tree family. Items are numbered by an
// in-order traversal with the root last; agents are the leaves, numbered
// left to right.
struct TreeNode {
  int parent = -1;  // item index, -1 at the root
  int depth = 0;    // edge distance from the root
  // Children are agents when `leaf_children`, items otherwise. The root has
  // a single child stored in `left` (right == -1).
  bool leaf_children = false;
  int left = -1;
  int right = -1;
  // Agents [agent_lo, agent_hi) and items [item_lo, item_hi) in the subtree.
  int agent_lo = 0, agent_hi = 0;
  int item_lo = 0, item_hi = 0;
};

struct TreeInstance {
  int k = 0;
  int n = 0;  // 2^k agents and items
  WeightedGraph base_graph{1};
  Metric metric = Metric::trusted(1, std::vector<Rational>(4));
  Instance instance{{{0}}};
  std::vector<TreeNode> nodes;     // indexed by item
  std::vector<int> agent_parent;   // item above each leaf
  int root = 0;                    // item index of the root (n - 1)

  bool item_in_subtree(int item, int node) const {
    return item >= nodes[node].item_lo && item < nodes[node].item_hi;
  }
  bool agent_in_subtree(int agent, int node) const {
    return agent >= nodes[node].agent_lo && agent < nodes[node].agent_hi;
  }
};

TreeInstance tree_instance(int k);

// True iff the subtree-preference property holds for every non-root vertex
// v with parent u: agents under v list all items under v before u, and u
// before every other item.
bool tree_subtree_property_holds(const TreeInstance& t);

// The metric in which `agent` is at distance 1 from every item on its root
// path, those path edges are removed, and every other edge has weight 0.
Metric tree_adversary_metric(const TreeInstance& t, int agent);

struct AdversaryWalkResult {
  int chosen_agent = -1;
  std::vector<int> unlucky;                          // deterministic walk
  std::vector<std::pair<Rational, Rational>> crossing;  // fractional walk: (left, right) per level
  std::vector<int> path;                             // visited internal vertices
};

// Descends from the root's child, marking at each vertex the lowest-index
// agent in its subtree that `m` matches outside it, and moving to the
// sibling subtree. Throws InvalidInput unless `m` is perfect.
AdversaryWalkResult unlucky_walk(const TreeInstance& t, const Matching& m);

// Fractional variant: moves away from the child subtree contributing more
// crossing weight; on an exact tie it moves left.
AdversaryWalkResult unlucky_walk_fractional(const TreeInstance& t, const FractionalMatching& p);

struct LineInstance {
  Instance instance;
  Metric metric;
  std::vector<Rational> agent_pos;
  std::vector<Rational> item_pos;
};

// Agent pi[i] sits at 2^i, item sigma[i] at 2^(i+1) for i < n-1, and
// item sigma[n-1] at -eps (0-based i). Distance ties are broken by position
// in sigma, so agent pi[i] lists sigma[i] ahead of every later sigma[j].
LineInstance line_sd_instance(int n, const std::vector<int>& pi, const std::vector<int>& sigma,
                              const Rational& eps = Rational(0));

struct BostonInstance {
  Instance instance;
  Metric metric;
  std::vector<int> priority;  // agents, highest priority first
  std::vector<Rational> agent_pos;
  std::vector<Rational> item_pos;
};

// One agent at 1 and one item at -eps; for t = 1..k-1, t agents and t items
// at 2^t. Priority is by distance to 0. The item at -eps loses every
// distance tie; other ties go to the lower index.
BostonInstance boston_instance(int k, const Rational& eps = Rational(0));

// Metric on points of the real line.
Metric line_metric(const std::vector<Rational>& agent_pos, const std::vector<Rational>& item_pos);

// 2n points on the grid {0, 1/100, ..., 1}^dim, L1 distances.
std::pair<Instance, Metric> euclidean_random(int n, int dim, std::uint64_t seed);

// Shortest-path closure of K_{n,n} with integer weights in [0, max_weight];
// produces plenty of zero distances and ties.
Metric random_bipartite_metric(int n, int max_weight, std::uint64_t seed);

// Uniformly random preference profile.
Instance random_instance(int n, std::uint64_t seed);

// Random convex combination of `terms` random permutation matrices.
FractionalMatching random_bvn_mixture(int n, int terms, std::uint64_t seed);

}  // namespace ordmatch

#endif  // ORDMATCH_GENERATORS_H_
