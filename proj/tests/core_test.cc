#include "ordmatch/core.h"

#include <gtest/gtest.h>

#include "ordmatch/generators.h"
#include "ordmatch/permutation.h"
#include "ordmatch/random.h"
#include "test_util.h"

namespace ordmatch {
namespace {

// Metric with the given agent-item distances, closed under shortest paths.
Metric bipartite(const std::vector<std::vector<Rational>>& d) {
  const int n = static_cast<int>(d.size());
  WeightedGraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g.add_agent_item_edge(i, j, d[i][j]);
  }
  return metric_from_graph(g);
}

TEST(InstanceTest, ValidatesLists) {
  EXPECT_NO_THROW(Instance({{0, 1}, {1, 0}}));
  EXPECT_THROW(Instance({{0, 0}, {1, 0}}), InvalidInput);
  EXPECT_THROW(Instance({{0}, {1, 0}}), InvalidInput);
  EXPECT_THROW(Instance({}), InvalidInput);
  EXPECT_THROW(Instance({{0, 2}, {1, 0}}), InvalidInput);
  const Instance inst({{1, 0}, {0, 1}});
  EXPECT_EQ(inst.rank(0, 1), 0);
  EXPECT_TRUE(inst.prefers(0, 1, 0));
}

TEST(MatchingTest, RejectsCollisions) {
  EXPECT_THROW(Matching({0, 0}), InvalidInput);
  EXPECT_THROW(Matching({0, 2}), InvalidInput);
  Matching m(3);
  m.match(0, 2);
  EXPECT_THROW(m.match(1, 2), InvalidInput);
  EXPECT_EQ(m.size(), 1);
  EXPECT_FALSE(m.perfect());
  EXPECT_EQ(m.agent_of(2), 0);
  EXPECT_EQ(m.agent_of(1), Matching::kUnmatched);
}

TEST(CostTest, EmptyMatchingCostsZero) {
  const Metric d = bipartite({{1, 2}, {3, 4}});
  EXPECT_EQ(cost(Matching(2), d), Rational(0));
}

TEST(CostTest, ZeroDiagonalIdentityCostsZero) {
  const Metric d = bipartite({{0, 1}, {1, 0}});
  EXPECT_EQ(cost(Matching({0, 1}), d), Rational(0));
}

TEST(CostTest, SumsMatchedPairs) {
  const Metric d = bipartite({{1, 5}, {5, 2}});
  EXPECT_EQ(cost(Matching({0, 1}), d), Rational(3));
  // Pair-by-pair enumeration.
  Rational manual;
  for (int i = 0; i < 2; ++i) manual += d.agent_item(i, i);
  EXPECT_EQ(manual, Rational(3));
}

TEST(CostTest, RejectsSizeMismatch) {
  const Metric d = bipartite({{1, 2}, {3, 4}});
  EXPECT_THROW(cost(Matching(3), d), InvalidInput);
}

TEST(FractionalCostTest, IndicatorEqualsMatchingCost) {
  const Metric d = bipartite({{1, 5, 2}, {5, 2, 3}, {4, 4, 4}});
  const Matching m({2, 0, 1});
  EXPECT_EQ(fractional_cost(FractionalMatching::indicator(m), d), cost(m, d));
}

TEST(FractionalCostTest, ZeroAndUniform) {
  const Metric d = bipartite({{1, 1}, {1, 1}});
  EXPECT_EQ(fractional_cost(FractionalMatching::zero(2), d), Rational(0));
  EXPECT_EQ(fractional_cost(FractionalMatching::uniform(2), d), Rational(2));
  EXPECT_THROW(fractional_cost(FractionalMatching::uniform(3), d), InvalidInput);
}

TEST(FractionalMatchingTest, ValidatesEntriesAndSums) {
  EXPECT_THROW(FractionalMatching({{Rational(3, 2)}}), InvalidInput);
  EXPECT_THROW(FractionalMatching({{Rational(-1, 2)}}), InvalidInput);
  EXPECT_THROW(FractionalMatching({{Rational(1, 2), Rational(2, 3)}, {0, 0}}), InvalidInput);
  EXPECT_THROW(FractionalMatching({{Rational(2, 3), 0}, {Rational(2, 3), 0}}), InvalidInput);
  EXPECT_TRUE(FractionalMatching::uniform(3).doubly_stochastic());
  EXPECT_FALSE(FractionalMatching::zero(3).doubly_stochastic());
  EXPECT_EQ(FractionalMatching::uniform(4).total(), Rational(4));
}

TEST(MetricFromGraphTest, SingleEdge) {
  WeightedGraph g(1);
  g.add_agent_item_edge(0, 0, 1);
  EXPECT_EQ(metric_from_graph(g).agent_item(0, 0), Rational(1));
}

TEST(MetricFromGraphTest, PathSums) {
  WeightedGraph g(2);
  g.add_agent_item_edge(0, 0, 1);
  g.add_edge(2, 3, 2);  // item 0 -- item 1
  g.add_agent_item_edge(1, 1, 0);
  EXPECT_EQ(metric_from_graph(g).agent_item(0, 1), Rational(3));
}

TEST(MetricFromGraphTest, TreeDistance) {
  // a_1 to b_8 on the k = 3 tree: 1 + 2 + 4 + 8.
  EXPECT_EQ(tree_instance(3).metric.agent_item(0, 7), Rational(15));
}

TEST(MetricFromGraphTest, DisconnectedGraphThrows) {
  WeightedGraph g(2);
  g.add_agent_item_edge(0, 0, 1);
  EXPECT_THROW(metric_from_graph(g), UnboundedDistance);
}

TEST(MetricFromGraphTest, RandomGraphsYieldMetrics) {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const int n = static_cast<int>(rng.between(1, 5));
    WeightedGraph g(n);
    for (int x = 1; x < 2 * n; ++x) {
      g.add_edge(static_cast<int>(rng.below(x)), x, Rational(rng.between(0, 9), rng.between(1, 4)));
    }
    for (int e = 0; e < n; ++e) {
      const int u = static_cast<int>(rng.below(2 * n)), v = static_cast<int>(rng.below(2 * n));
      if (u != v) g.add_edge(u, v, Rational(rng.between(0, 9)));
    }
    const Metric d = metric_from_graph(g);
    EXPECT_FALSE(metric_violation(n, d.to_matrix()).has_value());
    EXPECT_NO_THROW(Metric::from_matrix(n, d.to_matrix()));
  }
}

TEST(MetricTest, FromMatrixRejectsViolations) {
  std::vector<std::vector<Rational>> m(2, std::vector<Rational>(2));
  m[0][1] = m[1][0] = 1;
  EXPECT_NO_THROW(Metric::from_matrix(1, m));
  m[0][1] = 2;
  EXPECT_THROW(Metric::from_matrix(1, m), InvalidInput);
  std::vector<std::vector<Rational>> t(4, std::vector<Rational>(4, Rational(1)));
  for (int x = 0; x < 4; ++x) t[x][x] = 0;
  t[0][3] = t[3][0] = 3;  // exceeds 1 + 1
  EXPECT_THROW(Metric::from_matrix(2, t), InvalidInput);
}

TEST(PrefsFromMetricTest, SinglePoint) {
  const Metric d = bipartite({{5}});
  EXPECT_EQ(prefs_from_metric(d).prefs(), (std::vector<std::vector<int>>{{0}}));
}

TEST(PrefsFromMetricTest, TreeKOne) {
  const TreeInstance t = tree_instance(1);
  EXPECT_EQ(t.instance.prefs(), (std::vector<std::vector<int>>{{0, 1}, {0, 1}}));
  EXPECT_EQ(t.metric.agent_item(0, 0), Rational(1));
  EXPECT_EQ(t.metric.agent_item(0, 1), Rational(3));
}

TEST(PrefsFromMetricTest, LineWithPositiveOffset) {
  // Agent at 1; items at 2 (distance 1) and -1/4 (distance 5/4).
  const Metric d = line_metric({Rational(1), Rational(2)}, {Rational(2), Rational(-1, 4)});
  EXPECT_EQ(prefs_from_metric(d).list(0)[0], 0);
  EXPECT_EQ(d.agent_item(0, 0), Rational(1));
  EXPECT_EQ(d.agent_item(0, 1), Rational(5, 4));
}

TEST(PrefsFromMetricTest, TiesGoToLowerIndexOrTieKey) {
  const Metric d = bipartite({{1, 1, 1}, {2, 1, 1}, {1, 1, 1}});
  const Instance by_index = prefs_from_metric(d);
  EXPECT_EQ(by_index.list(0)[0], 0);
  EXPECT_EQ(by_index.list(1)[0], 1);
  const std::vector<int> key{2, 1, 0};
  const Instance keyed = prefs_from_metric(d, key);
  EXPECT_EQ(keyed.list(0)[0], 2);
}

TEST(ConsistentTest, DirectViolation) {
  const Instance inst({{0, 1}, {0, 1}});
  const Metric d = bipartite({{2, 1}, {1, 2}});
  EXPECT_FALSE(consistent(inst, d));
}

TEST(ConsistentTest, PrefsFromMetricIsAlwaysConsistent) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Metric d = random_bipartite_metric(1 + static_cast<int>(s % 5), 4, s);
    EXPECT_TRUE(consistent(prefs_from_metric(d), d));
  }
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto [inst, d] = euclidean_random(4, 2, s);
    EXPECT_TRUE(consistent(inst, d));
  }
}

TEST(CostTest, AdditiveOverDisjointPairs) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Metric d = random_bipartite_metric(5, 9, s);
    Rng rng(s);
    const auto perm = rng.permutation(5);
    Matching left(5), right(5);
    for (int i = 0; i < 5; ++i) (i % 2 ? left : right).match(i, perm[i]);
    EXPECT_EQ(cost(left, d) + cost(right, d), cost(Matching(perm), d));
  }
}

TEST(FractionalCostTest, LinearInConvexCombinations) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Metric d = random_bipartite_metric(4, 9, s);
    Rng rng(s + 100);
    const Matching a(rng.permutation(4)), b(rng.permutation(4));
    const Rational w(rng.between(0, 10), 10);
    std::vector<std::vector<Rational>> p(4, std::vector<Rational>(4));
    for (int i = 0; i < 4; ++i) {
      p[i][a.item_of(i)] += w;
      p[i][b.item_of(i)] += Rational(1) - w;
    }
    EXPECT_EQ(fractional_cost(FractionalMatching(p), d),
              w * cost(a, d) + (Rational(1) - w) * cost(b, d));
  }
}

TEST(CutMetricTest, IsAPseudoMetric) {
  std::vector<bool> s{true, false, false, true};
  const Metric d = cut_metric(2, s);
  EXPECT_FALSE(metric_violation(2, d.to_matrix()).has_value());
  EXPECT_EQ(d.at(0, 1), Rational(1));
  EXPECT_EQ(d.at(0, 3), Rational(0));
}

TEST(PermutationTest, RequirePermutation) {
  EXPECT_TRUE(is_permutation(std::vector<int>{2, 0, 1}, 3));
  EXPECT_FALSE(is_permutation(std::vector<int>{2, 2, 1}, 3));
  EXPECT_THROW(require_permutation(std::vector<int>{0}, 2, "x"), InvalidInput);
}

}  // namespace
}  // namespace ordmatch
