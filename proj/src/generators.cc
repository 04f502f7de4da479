#include "ordmatch/generators.h"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

#include "ordmatch/permutation.h"
#include "ordmatch/random.h"

namespace ordmatch {

// ---------------------------------------------------------------------------
// Tree family

TreeInstance tree_instance(int k) {
  if (k < 1 || k > 10) throw InvalidInput("tree_instance: k must be in [1, 10]");
  TreeInstance t;
  t.k = k;
  t.n = 1 << k;
  const int n = t.n;
  t.nodes.assign(n, TreeNode{});
  t.agent_parent.assign(n, -1);
  t.root = n - 1;

  // The binary part below the root is a complete tree of 2^k - 1 vertices in
  // heap order (1-based). Number them in-order to get item indices.
  const int binary = n - 1;
  std::vector<int> item_of_heap(binary + 1, -1);
  int counter = 0;
  std::function<void(int)> inorder = [&](int h) {
    if (h > binary) return;
    inorder(2 * h);
    item_of_heap[h] = counter++;
    inorder(2 * h + 1);
  };
  inorder(1);

  TreeNode& root = t.nodes[t.root];
  root.parent = -1;
  root.depth = 0;
  root.left = item_of_heap[1];
  root.agent_lo = 0;
  root.agent_hi = n;
  root.item_lo = 0;
  root.item_hi = n;

  WeightedGraph g(n);
  g.add_edge(g.n + t.root, g.n + item_of_heap[1], pow2(k));

  int next_agent = 0;
  std::function<void(int, int)> build = [&](int h, int parent_item) {
    const int item = item_of_heap[h];
    TreeNode& node = t.nodes[item];
    node.parent = parent_item;
    node.depth = t.nodes[parent_item].depth + 1;
    const Rational w = pow2(k - node.depth);
    if (2 * h > binary) {
      node.leaf_children = true;
      node.left = next_agent;
      node.right = next_agent + 1;
      node.agent_lo = next_agent;
      node.agent_hi = next_agent + 2;
      for (int a : {node.left, node.right}) {
        t.agent_parent[a] = item;
        g.add_agent_item_edge(a, item, w);
      }
      next_agent += 2;
      node.item_lo = item;
      node.item_hi = item + 1;
      return;
    }
    node.left = item_of_heap[2 * h];
    node.right = item_of_heap[2 * h + 1];
    g.add_edge(g.n + item, g.n + node.left, w);
    g.add_edge(g.n + item, g.n + node.right, w);
    build(2 * h, item);
    build(2 * h + 1, item);
    const TreeNode& l = t.nodes[node.left];
    const TreeNode& r = t.nodes[node.right];
    node.agent_lo = l.agent_lo;
    node.agent_hi = r.agent_hi;
    node.item_lo = l.item_lo;
    node.item_hi = r.item_hi;
  };
  build(1, t.root);

  t.base_graph = g;
  t.metric = metric_from_graph(g);
  t.instance = prefs_from_metric(t.metric);
  return t;
}

bool tree_subtree_property_holds(const TreeInstance& t) {
  const Instance& inst = t.instance;
  for (int v = 0; v < t.n; ++v) {
    if (v == t.root) continue;
    const TreeNode& node = t.nodes[v];
    const int u = node.parent;
    for (int a = node.agent_lo; a < node.agent_hi; ++a) {
      const int ru = inst.rank(a, u);
      for (int b = 0; b < t.n; ++b) {
        if (b == u) continue;
        const bool inside = t.item_in_subtree(b, v);
        if (inside && inst.rank(a, b) > ru) return false;
        if (!inside && inst.rank(a, b) < ru) return false;
      }
    }
  }
  // Leaves: every agent lists its own parent first.
  for (int a = 0; a < t.n; ++a) {
    if (inst.list(a)[0] != t.agent_parent[a]) return false;
  }
  return true;
}

Metric tree_adversary_metric(const TreeInstance& t, int agent) {
  if (agent < 0 || agent >= t.n) throw InvalidInput("tree_adversary_metric: agent out of range");
  const int n = t.n;
  std::vector<char> on_path(2 * n, 0);
  for (int item = t.agent_parent[agent]; item >= 0; item = t.nodes[item].parent) {
    on_path[n + item] = 1;
  }
  WeightedGraph g(n);
  for (const auto& e : t.base_graph.edges) {
    const bool touches_agent = e.u == agent || e.v == agent;
    if (on_path[e.u] && on_path[e.v]) continue;
    if (touches_agent) continue;  // re-added below with weight 1
    g.add_edge(e.u, e.v, Rational(0));
  }
  for (int p = 0; p < 2 * n; ++p) {
    if (on_path[p]) g.add_edge(agent, p, Rational(1));
  }
  return metric_from_graph(g);
}

AdversaryWalkResult unlucky_walk(const TreeInstance& t, const Matching& m) {
  if (m.n() != t.n || !m.perfect()) throw InvalidInput("unlucky_walk: matching must be perfect");
  AdversaryWalkResult out;
  int current = t.nodes[t.root].left;
  while (true) {
    const TreeNode& node = t.nodes[current];
    out.path.push_back(current);
    int escaped = -1;
    for (int a = node.agent_lo; a < node.agent_hi; ++a) {
      if (!t.item_in_subtree(m.item_of(a), current)) {
        escaped = a;
        break;
      }
    }
    // Pigeonhole: the subtree has one more agent than items.
    if (escaped < 0) throw std::logic_error("unlucky_walk: no agent leaves the subtree");
    out.unlucky.push_back(escaped);
    bool in_left;
    if (node.leaf_children) {
      in_left = escaped == node.left;
      out.chosen_agent = in_left ? node.right : node.left;
      return out;
    }
    in_left = t.agent_in_subtree(escaped, node.left);
    current = in_left ? node.right : node.left;
  }
}

AdversaryWalkResult unlucky_walk_fractional(const TreeInstance& t, const FractionalMatching& p) {
  if (p.n() != t.n || !p.doubly_stochastic()) {
    throw InvalidInput("unlucky_walk_fractional: p must be doubly stochastic");
  }
  AdversaryWalkResult out;
  int current = t.nodes[t.root].left;
  while (true) {
    const TreeNode& node = t.nodes[current];
    out.path.push_back(current);
    auto crossing_from = [&](int lo, int hi) {
      Rational w;
      for (int a = lo; a < hi; ++a) {
        for (int b = 0; b < t.n; ++b) {
          if (!t.item_in_subtree(b, current)) w += p.at(a, b);
        }
      }
      return w;
    };
    Rational left_w, right_w;
    if (node.leaf_children) {
      left_w = crossing_from(node.left, node.left + 1);
      right_w = crossing_from(node.right, node.right + 1);
    } else {
      left_w = crossing_from(t.nodes[node.left].agent_lo, t.nodes[node.left].agent_hi);
      right_w = crossing_from(t.nodes[node.right].agent_lo, t.nodes[node.right].agent_hi);
    }
    const bool go_right = left_w > right_w;
    out.crossing.emplace_back(left_w, right_w);
    if (node.leaf_children) {
      out.chosen_agent = go_right ? node.right : node.left;
      return out;
    }
    current = go_right ? node.right : node.left;
  }
}

// ---------------------------------------------------------------------------
// Line families

Metric line_metric(const std::vector<Rational>& agent_pos, const std::vector<Rational>& item_pos) {
  const int n = static_cast<int>(agent_pos.size());
  if (static_cast<int>(item_pos.size()) != n) throw InvalidInput("line_metric: size mismatch");
  std::vector<Rational> pos(agent_pos);
  pos.insert(pos.end(), item_pos.begin(), item_pos.end());
  const int pts = 2 * n;
  std::vector<Rational> flat(static_cast<std::size_t>(pts) * pts);
  for (int x = 0; x < pts; ++x) {
    for (int y = 0; y < pts; ++y) flat[x * pts + y] = abs(pos[x] - pos[y]);
  }
  return Metric::trusted(n, std::move(flat));
}

LineInstance line_sd_instance(int n, const std::vector<int>& pi, const std::vector<int>& sigma,
                              const Rational& eps) {
  if (n < 1) throw InvalidInput("line_sd_instance: n must be positive");
  require_permutation(pi, n, "pi");
  require_permutation(sigma, n, "sigma");
  if (eps.sign() < 0) throw InvalidInput("line_sd_instance: eps must be nonnegative");
  std::vector<Rational> agent_pos(n), item_pos(n);
  for (int i = 0; i < n; ++i) {
    agent_pos[pi[i]] = pow2(i);
    item_pos[sigma[i]] = i + 1 < n ? pow2(i + 1) : -eps;
  }
  Metric d = line_metric(agent_pos, item_pos);
  const std::vector<int> tie_key = inverse(sigma);
  Instance inst = prefs_from_metric(d, tie_key);
  return {std::move(inst), std::move(d), std::move(agent_pos), std::move(item_pos)};
}

BostonInstance boston_instance(int k, const Rational& eps) {
  if (k < 2) throw InvalidInput("boston_instance: k must be at least 2");
  if (eps.sign() < 0) throw InvalidInput("boston_instance: eps must be nonnegative");
  std::vector<Rational> agent_pos{Rational(1)};
  std::vector<Rational> item_pos{-eps};
  for (int t = 1; t <= k - 1; ++t) {
    for (int c = 0; c < t; ++c) {
      agent_pos.push_back(pow2(t));
      item_pos.push_back(pow2(t));
    }
  }
  const int n = static_cast<int>(agent_pos.size());
  Metric d = line_metric(agent_pos, item_pos);
  std::vector<int> tie_key(n);
  std::iota(tie_key.begin(), tie_key.end(), 0);
  tie_key[0] = n;  // the item at -eps loses every tie
  Instance inst = prefs_from_metric(d, tie_key);
  std::vector<int> priority(n);
  std::iota(priority.begin(), priority.end(), 0);  // agents are stored by distance to 0
  return {std::move(inst), std::move(d), std::move(priority), std::move(agent_pos),
          std::move(item_pos)};
}

// ---------------------------------------------------------------------------
// Random sources

std::pair<Instance, Metric> euclidean_random(int n, int dim, std::uint64_t seed) {
  if (n < 1 || dim < 1) throw InvalidInput("euclidean_random: n and dim must be positive");
  Rng rng(seed);
  const int pts = 2 * n;
  std::vector<std::vector<std::int64_t>> coords(pts, std::vector<std::int64_t>(dim));
  for (auto& p : coords) {
    for (auto& c : p) c = rng.between(0, 100);
  }
  std::vector<Rational> flat(static_cast<std::size_t>(pts) * pts);
  for (int x = 0; x < pts; ++x) {
    for (int y = 0; y < pts; ++y) {
      std::int64_t l1 = 0;
      for (int c = 0; c < dim; ++c) l1 += std::abs(coords[x][c] - coords[y][c]);
      flat[x * pts + y] = Rational(l1, 100);
    }
  }
  Metric d = Metric::trusted(n, std::move(flat));
  Instance inst = prefs_from_metric(d);
  return {std::move(inst), std::move(d)};
}

Metric random_bipartite_metric(int n, int max_weight, std::uint64_t seed) {
  if (n < 1 || max_weight < 0) throw InvalidInput("random_bipartite_metric: bad arguments");
  Rng rng(seed);
  WeightedGraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g.add_agent_item_edge(i, j, Rational(rng.between(0, max_weight)));
  }
  return metric_from_graph(g);
}

Instance random_instance(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("random_instance: n must be positive");
  Rng rng(seed);
  std::vector<std::vector<int>> prefs(n);
  for (auto& list : prefs) list = rng.permutation(n);
  return Instance(std::move(prefs));
}

FractionalMatching random_bvn_mixture(int n, int terms, std::uint64_t seed) {
  if (n < 1 || terms < 1) throw InvalidInput("random_bvn_mixture: bad arguments");
  Rng rng(seed);
  std::vector<std::int64_t> w(terms);
  std::int64_t total = 0;
  for (auto& x : w) {
    x = rng.between(1, 20);
    total += x;
  }
  std::vector<std::vector<Rational>> p(n, std::vector<Rational>(n));
  for (int t = 0; t < terms; ++t) {
    const auto perm = rng.permutation(n);
    const Rational weight(w[t], total);
    for (int i = 0; i < n; ++i) p[i][perm[i]] += weight;
  }
  return FractionalMatching(std::move(p));
}

}  // namespace ordmatch
