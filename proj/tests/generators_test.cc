#include "ordmatch/generators.h"

#include <gtest/gtest.h>

#include <numeric>

#include "ordmatch/mechanisms.h"
#include "ordmatch/permutation.h"
#include "ordmatch/random.h"
#include "test_util.h"

namespace ordmatch {
namespace {

std::vector<int> identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

TEST(TreeInstanceTest, ShapeAndWeights) {
  for (int k = 1; k <= 5; ++k) {
    const TreeInstance t = tree_instance(k);
    EXPECT_EQ(t.n, 1 << k);
    EXPECT_EQ(t.root, t.n - 1);
    EXPECT_EQ(t.nodes[t.root].right, -1);
    for (int v = 0; v < t.n; ++v) {
      if (v == t.root) continue;
      EXPECT_GE(t.nodes[v].left, 0);
      EXPECT_GE(t.nodes[v].right, 0);
    }
    // An edge hanging below an item at depth d weighs 2^(k - d).
    for (const auto& e : t.base_graph.edges) {
      int upper;
      if (e.u < t.n || e.v < t.n) {
        upper = e.u < t.n ? e.v - t.n : e.u - t.n;
      } else {
        const int x = e.u - t.n, y = e.v - t.n;
        upper = t.nodes[x].parent == y ? y : x;
      }
      EXPECT_EQ(e.weight, pow2(k - t.nodes[upper].depth)) << "k=" << k;
    }
  }
}

TEST(TreeInstanceTest, KOneLists) {
  const TreeInstance t = tree_instance(1);
  EXPECT_EQ(t.instance.prefs(), (std::vector<std::vector<int>>{{0, 1}, {0, 1}}));
}

TEST(TreeInstanceTest, KThreeFirstAgentList) {
  const TreeInstance t = tree_instance(3);
  const auto list = t.instance.list(0);
  EXPECT_EQ(std::vector<int>(list.begin(), list.begin() + 4), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(t.metric.agent_item(0, 0), Rational(1));
  EXPECT_EQ(t.metric.agent_item(0, 1), Rational(3));
  EXPECT_EQ(t.metric.agent_item(0, 2), Rational(5));
  EXPECT_EQ(t.metric.agent_item(0, 3), Rational(7));
}

TEST(TreeInstanceTest, SubtreePreferenceProperty) {
  for (int k = 1; k <= 6; ++k) EXPECT_TRUE(tree_subtree_property_holds(tree_instance(k))) << k;
}

TEST(TreeAdversaryMetricTest, FigureValues) {
  const TreeInstance t = tree_instance(3);
  const Metric d = tree_adversary_metric(t, 2);
  for (int j = 0; j < t.n; ++j) EXPECT_EQ(d.agent_item(2, j), Rational(1)) << j;
  EXPECT_EQ(d.agent_item(0, 0), Rational(0));
  EXPECT_EQ(d.agent_item(0, 7), Rational(2));
}

TEST(TreeAdversaryMetricTest, ConsistentForEveryAgent) {
  for (int k = 1; k <= 4; ++k) {
    const TreeInstance t = tree_instance(k);
    for (int a = 0; a < t.n; ++a) {
      EXPECT_TRUE(consistent(t.instance, tree_adversary_metric(t, a))) << k << " " << a;
    }
  }
}

TEST(TreeAdversaryMetricTest, OptimumCostsOneByBruteForce) {
  for (int k = 1; k <= 3; ++k) {
    const TreeInstance t = tree_instance(k);
    for (int a = 0; a < t.n; ++a) {
      EXPECT_EQ(oracle::brute_force_min_cost(tree_adversary_metric(t, a)), Rational(1));
    }
  }
}

TEST(UnluckyWalkTest, KOneExample) {
  const TreeInstance t = tree_instance(1);
  const Matching m({0, 1});
  const AdversaryWalkResult r = unlucky_walk(t, m);
  EXPECT_EQ(r.unlucky, std::vector<int>{1});
  EXPECT_EQ(r.chosen_agent, 0);
  EXPECT_EQ(cost(m, tree_adversary_metric(t, 0)), Rational(3));
}

TEST(UnluckyWalkTest, KTwoExhaustive) {
  const TreeInstance t = tree_instance(2);
  for (const auto& perm : all_permutations(4)) {
    const Matching m(perm);
    const AdversaryWalkResult r = unlucky_walk(t, m);
    EXPECT_EQ(static_cast<int>(r.unlucky.size()), 2);
    EXPECT_GE(cost(m, tree_adversary_metric(t, r.chosen_agent)), Rational(5));
  }
}

TEST(UnluckyWalkTest, KThreeOptimalMatchingOfAnotherAgent) {
  const TreeInstance t = tree_instance(3);
  const Metric d = tree_adversary_metric(t, 2);
  // A perfect matching of cost 1 under agent 2's metric, found by brute force.
  std::vector<int> perm = identity(8);
  std::optional<Matching> best;
  do {
    if (cost(Matching(perm), d) == 1) {
      best = Matching(perm);
      break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  ASSERT_TRUE(best.has_value());
  const AdversaryWalkResult r = unlucky_walk(t, *best);
  EXPECT_EQ(static_cast<int>(r.unlucky.size()), 3);
  EXPECT_GE(cost(*best, tree_adversary_metric(t, r.chosen_agent)), Rational(7));
}

TEST(UnluckyWalkTest, RejectsPartialMatching) {
  EXPECT_THROW(unlucky_walk(tree_instance(1), Matching(2)), InvalidInput);
}

TEST(UnluckyWalkFractionalTest, UniformKOne) {
  const TreeInstance t = tree_instance(1);
  const FractionalMatching p = FractionalMatching::uniform(2);
  const AdversaryWalkResult r = unlucky_walk_fractional(t, p);
  ASSERT_EQ(r.crossing.size(), 1u);
  EXPECT_EQ(r.crossing[0].first + r.crossing[0].second, Rational(1));
  EXPECT_EQ(r.chosen_agent, 0);  // tie descends left
  for (int a = 0; a < 2; ++a) EXPECT_EQ(fractional_cost(p, tree_adversary_metric(t, a)), Rational(2));
}

TEST(UnluckyWalkFractionalTest, IndicatorInputs) {
  for (int k = 1; k <= 3; ++k) {
    const TreeInstance t = tree_instance(k);
    Rng rng(k);
    for (int s = 0; s < 30; ++s) {
      const FractionalMatching p = FractionalMatching::indicator(Matching(rng.permutation(t.n)));
      const int a = unlucky_walk_fractional(t, p).chosen_agent;
      EXPECT_GE(fractional_cost(p, tree_adversary_metric(t, a)), Rational(k + 1));
    }
  }
}

TEST(UnluckyWalkFractionalTest, RsdMarginalsKTwo) {
  const TreeInstance t = tree_instance(2);
  const FractionalMatching p(oracle::brute_force_marginals(t.instance, 4));
  const int a = unlucky_walk_fractional(t, p).chosen_agent;
  EXPECT_GE(fractional_cost(p, tree_adversary_metric(t, a)), Rational(3));
}

TEST(UnluckyWalkFractionalTest, RejectsSubStochastic) {
  EXPECT_THROW(unlucky_walk_fractional(tree_instance(1), FractionalMatching::zero(2)), InvalidInput);
}

TEST(LineSdInstanceTest, SmallCases) {
  for (int n : {2, 3, 5}) {
    const auto id = identity(n);
    const LineInstance l = line_sd_instance(n, id, id);
    const Matching m = serial_dictatorship(l.instance, id);
    EXPECT_EQ(cost(m, l.metric), pow2(n) - 1) << n;
    EXPECT_EQ(oracle::brute_force_min_cost(l.metric), Rational(1)) << n;
  }
}

TEST(LineSdInstanceTest, HypothesisHoldsForRandomOrders) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const int n = static_cast<int>(rng.between(1, 7));
    const auto pi = rng.permutation(n), sigma = rng.permutation(n);
    const Instance inst = line_sd_instance(n, pi, sigma).instance;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) EXPECT_TRUE(inst.prefers(pi[i], sigma[i], sigma[j]));
    }
  }
}

TEST(LineSdInstanceTest, PositiveEpsilonKeepsOrder) {
  const auto id = identity(4);
  const LineInstance l = line_sd_instance(4, id, id, Rational(1, 10));
  EXPECT_EQ(l.item_pos[3], Rational(-1, 10));
  EXPECT_EQ(cost(serial_dictatorship(l.instance, id), l.metric), Rational(15) + Rational(1, 10));
}

TEST(BostonInstanceTest, Layout) {
  const BostonInstance b2 = boston_instance(2);
  EXPECT_EQ(b2.instance.n(), 2);
  EXPECT_EQ(b2.agent_pos, (std::vector<Rational>{1, 2}));
  EXPECT_EQ(b2.item_pos, (std::vector<Rational>{0, 2}));
  // The far item loses its distance tie for the agent at 1 (both at distance 1).
  EXPECT_EQ(b2.instance.list(0)[0], 1);
  EXPECT_EQ(boston_instance(3).instance.n(), 4);
  EXPECT_EQ(boston_instance(6).instance.n(), 16);
}

TEST(BostonInstanceTest, OptimumCostsOne) {
  for (int k = 2; k <= 4; ++k) {
    EXPECT_EQ(oracle::brute_force_min_cost(boston_instance(k).metric), Rational(1)) << k;
  }
}

TEST(BostonInstanceTest, CoLocatedAgentsShareLists) {
  const BostonInstance b = boston_instance(5);
  for (int a = 1; a < b.instance.n(); ++a) {
    for (int c = a + 1; c < b.instance.n(); ++c) {
      if (b.agent_pos[a] == b.agent_pos[c]) {
        EXPECT_EQ(b.instance.prefs()[a], b.instance.prefs()[c]);
      }
    }
  }
  EXPECT_EQ(b.priority, identity(b.instance.n()));
}

TEST(EuclideanRandomTest, DeterministicAndConsistent) {
  const auto a = euclidean_random(4, 2, 7), b = euclidean_random(4, 2, 7);
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
  EXPECT_TRUE(consistent(a.first, a.second));
  EXPECT_FALSE(metric_violation(4, a.second.to_matrix()).has_value());
  const auto single = euclidean_random(1, 3, 1);
  EXPECT_EQ(single.first.n(), 1);
}

TEST(RandomBvnMixtureTest, DoublyStochastic) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    EXPECT_TRUE(random_bvn_mixture(1 + static_cast<int>(s % 6), 4, s).doubly_stochastic());
  }
}

}  // namespace
}  // namespace ordmatch
