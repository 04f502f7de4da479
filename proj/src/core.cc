#include "ordmatch/core.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace ordmatch {

bool is_permutation(std::span<const int> perm, int n) {
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

void require_permutation(std::span<const int> perm, int n, const char* what) {
  if (!is_permutation(perm, n)) {
    throw InvalidInput(std::string(what) + " is not a permutation of 0.." + std::to_string(n - 1));
  }
}

// ---------------------------------------------------------------------------
// Instance

Instance::Instance(std::vector<std::vector<int>> prefs) : prefs_(std::move(prefs)) {
  const int n = static_cast<int>(prefs_.size());
  if (n < 1) throw InvalidInput("instance needs at least one agent");
  rank_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    require_permutation(prefs_[i], n, ("preference list of agent " + std::to_string(i)).c_str());
    for (int k = 0; k < n; ++k) rank_[i * n + prefs_[i][k]] = k;
  }
}

// ---------------------------------------------------------------------------
// Metric

std::optional<std::string> metric_violation(int n, const std::vector<std::vector<Rational>>& dist) {
  const int pts = 2 * n;
  if (n < 1) return "metric needs n >= 1";
  if (static_cast<int>(dist.size()) != pts) return "distance matrix must be 2n x 2n";
  for (const auto& row : dist) {
    if (static_cast<int>(row.size()) != pts) return "distance matrix must be 2n x 2n";
  }
  for (int x = 0; x < pts; ++x) {
    if (!dist[x][x].is_zero()) return "nonzero diagonal at point " + std::to_string(x);
    for (int y = 0; y < pts; ++y) {
      if (dist[x][y].sign() < 0) {
        return "negative distance between " + std::to_string(x) + " and " + std::to_string(y);
      }
      if (dist[x][y] != dist[y][x]) {
        return "asymmetric distance between " + std::to_string(x) + " and " + std::to_string(y);
      }
    }
  }
  for (int x = 0; x < pts; ++x) {
    for (int y = x + 1; y < pts; ++y) {
      for (int z = 0; z < pts; ++z) {
        if (dist[x][y] > dist[x][z] + dist[z][y]) {
          std::ostringstream os;
          os << "triangle inequality fails: d(" << x << "," << y << ") > d(" << x << "," << z
             << ") + d(" << z << "," << y << ")";
          return os.str();
        }
      }
    }
  }
  return std::nullopt;
}

Metric Metric::from_matrix(int n, std::vector<std::vector<Rational>> dist) {
  if (auto why = metric_violation(n, dist)) throw InvalidInput("invalid metric: " + *why);
  std::vector<Rational> flat;
  flat.reserve(static_cast<std::size_t>(4) * n * n);
  for (auto& row : dist) {
    for (auto& v : row) flat.push_back(std::move(v));
  }
  return Metric(n, std::move(flat));
}

Metric Metric::trusted(int n, std::vector<Rational> flat) { return Metric(n, std::move(flat)); }

std::vector<std::vector<Rational>> Metric::to_matrix() const {
  std::vector<std::vector<Rational>> out(points(), std::vector<Rational>(points()));
  for (int x = 0; x < points(); ++x) {
    for (int y = 0; y < points(); ++y) out[x][y] = at(x, y);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matching

Matching::Matching(std::vector<int> assign) : assign_(std::move(assign)) {
  const int n = static_cast<int>(assign_.size());
  std::vector<char> taken(n, 0);
  for (int i = 0; i < n; ++i) {
    const int j = assign_[i];
    if (j == kUnmatched) continue;
    if (j < 0 || j >= n) throw InvalidInput("matching: item index out of range");
    if (taken[j]) throw InvalidInput("matching: item " + std::to_string(j) + " assigned twice");
    taken[j] = 1;
  }
}

int Matching::size() const {
  return static_cast<int>(std::count_if(assign_.begin(), assign_.end(),
                                        [](int j) { return j != kUnmatched; }));
}

void Matching::match(int agent, int item) {
  if (agent < 0 || agent >= n() || item < 0 || item >= n()) {
    throw InvalidInput("matching: index out of range");
  }
  if (assign_[agent] != kUnmatched) throw InvalidInput("matching: agent already matched");
  if (agent_of(item) != kUnmatched) throw InvalidInput("matching: item already taken");
  assign_[agent] = item;
}

int Matching::agent_of(int item) const {
  for (int i = 0; i < n(); ++i) {
    if (assign_[i] == item) return i;
  }
  return kUnmatched;
}

// ---------------------------------------------------------------------------
// FractionalMatching

FractionalMatching::FractionalMatching(std::vector<std::vector<Rational>> p) : p_(std::move(p)) {
  const int n = static_cast<int>(p_.size());
  std::vector<Rational> col(n);
  for (const auto& row : p_) {
    if (static_cast<int>(row.size()) != n) throw InvalidInput("fractional matching must be n x n");
    Rational sum;
    for (int j = 0; j < n; ++j) {
      if (row[j].sign() < 0 || row[j] > 1) {
        throw InvalidInput("fractional matching entry outside [0, 1]");
      }
      sum += row[j];
      col[j] += row[j];
    }
    if (sum > 1) throw InvalidInput("fractional matching row sum exceeds 1");
  }
  for (const auto& c : col) {
    if (c > 1) throw InvalidInput("fractional matching column sum exceeds 1");
  }
}

FractionalMatching FractionalMatching::zero(int n) {
  return FractionalMatching(std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
}

FractionalMatching FractionalMatching::indicator(const Matching& m) {
  std::vector<std::vector<Rational>> p(m.n(), std::vector<Rational>(m.n()));
  for (int i = 0; i < m.n(); ++i) {
    if (m.matched(i)) p[i][m.item_of(i)] = 1;
  }
  return FractionalMatching(std::move(p));
}

FractionalMatching FractionalMatching::uniform(int n) {
  return FractionalMatching(
      std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(1, n))));
}

bool FractionalMatching::doubly_stochastic() const {
  const int n = this->n();
  for (int i = 0; i < n; ++i) {
    Rational row;
    Rational col;
    for (int j = 0; j < n; ++j) {
      row += p_[i][j];
      col += p_[j][i];
    }
    if (row != 1 || col != 1) return false;
  }
  return true;
}

Rational FractionalMatching::total() const {
  Rational sum;
  for (const auto& row : p_) {
    for (const auto& v : row) sum += v;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// WeightedGraph

void WeightedGraph::add_edge(int u, int v, Rational weight) {
  if (u < 0 || v < 0 || u >= points() || v >= points()) {
    throw InvalidInput("graph edge endpoint out of range");
  }
  if (weight.sign() < 0) throw InvalidInput("graph edge weight must be nonnegative");
  edges.push_back({u, v, std::move(weight)});
}

// ---------------------------------------------------------------------------
// Operations

Rational cost(const Matching& m, const Metric& d) {
  if (m.n() != d.n()) throw InvalidInput("cost: matching and metric sizes differ");
  Rational total;
  for (int i = 0; i < m.n(); ++i) {
    if (m.matched(i)) total += d.agent_item(i, m.item_of(i));
  }
  return total;
}

Rational fractional_cost(const FractionalMatching& p, const Metric& d) {
  if (p.n() != d.n()) throw InvalidInput("fractional_cost: dimension mismatch");
  Rational total;
  for (int i = 0; i < p.n(); ++i) {
    for (int j = 0; j < p.n(); ++j) {
      if (!p.at(i, j).is_zero()) total += p.at(i, j) * d.agent_item(i, j);
    }
  }
  return total;
}

Metric metric_from_graph(const WeightedGraph& g) {
  const int pts = g.points();
  std::vector<Rational> dist(static_cast<std::size_t>(pts) * pts);
  std::vector<char> known(static_cast<std::size_t>(pts) * pts, 0);
  for (int x = 0; x < pts; ++x) known[x * pts + x] = 1;
  for (const auto& e : g.edges) {
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      const std::size_t idx = static_cast<std::size_t>(a) * pts + b;
      if (a == b) continue;
      if (!known[idx] || e.weight < dist[idx]) {
        dist[idx] = e.weight;
        known[idx] = 1;
      }
    }
  }
  for (int z = 0; z < pts; ++z) {
    for (int x = 0; x < pts; ++x) {
      if (!known[x * pts + z]) continue;
      const Rational& xz = dist[x * pts + z];
      for (int y = 0; y < pts; ++y) {
        if (!known[z * pts + y]) continue;
        Rational via = xz + dist[z * pts + y];
        const std::size_t idx = static_cast<std::size_t>(x) * pts + y;
        if (!known[idx] || via < dist[idx]) {
          dist[idx] = std::move(via);
          known[idx] = 1;
        }
      }
    }
  }
  if (std::find(known.begin(), known.end(), 0) != known.end()) {
    throw UnboundedDistance("metric_from_graph: graph is disconnected");
  }
  return Metric::trusted(g.n, std::move(dist));
}

Instance prefs_from_metric(const Metric& d, std::span<const int> tie_key) {
  const int n = d.n();
  if (!tie_key.empty() && static_cast<int>(tie_key.size()) != n) {
    throw InvalidInput("prefs_from_metric: tie key must have one entry per item");
  }
  std::vector<std::vector<int>> prefs(n);
  for (int i = 0; i < n; ++i) {
    auto& list = prefs[i];
    list.resize(n);
    std::iota(list.begin(), list.end(), 0);
    std::stable_sort(list.begin(), list.end(), [&](int a, int b) {
      const auto c = d.agent_item(i, a) <=> d.agent_item(i, b);
      if (c != 0) return c < 0;
      if (!tie_key.empty()) return tie_key[a] < tie_key[b];
      return a < b;
    });
  }
  return Instance(std::move(prefs));
}

bool consistent(const Instance& inst, const Metric& d) {
  if (inst.n() != d.n()) throw InvalidInput("consistent: dimension mismatch");
  for (int i = 0; i < inst.n(); ++i) {
    const auto list = inst.list(i);
    for (int k = 0; k + 1 < inst.n(); ++k) {
      if (d.agent_item(i, list[k]) > d.agent_item(i, list[k + 1])) return false;
    }
  }
  return true;
}

Metric cut_metric(int n, const std::vector<bool>& in_s) {
  const int pts = 2 * n;
  if (static_cast<int>(in_s.size()) != pts) throw InvalidInput("cut_metric: need one flag per point");
  std::vector<Rational> flat(static_cast<std::size_t>(pts) * pts);
  for (int x = 0; x < pts; ++x) {
    for (int y = 0; y < pts; ++y) {
      if (in_s[x] != in_s[y]) flat[x * pts + y] = 1;
    }
  }
  return Metric::trusted(n, std::move(flat));
}

}  // namespace ordmatch
