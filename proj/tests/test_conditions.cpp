#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "reference.hpp"

using namespace remote_vm;
using fixtures::butterfly;
using fixtures::two_fan;

namespace {

VertexSet random_family(const BipartiteGraph& g, Side s, Rng& rng, double p) {
  VertexSet fam;
  std::bernoulli_distribution coin(p);
  for (auto v : g.vertices(s))
    if (coin(rng)) fam.insert(v);
  return fam;
}

// Random instance after star repair, so the conditions are not vacuously false.
BipartiteGraph repaired(Rng& rng, std::size_t a, std::size_t b) {
  auto g = fixtures::random_graph(rng, a, b);
  return ensure_star_vertices(g, StarPolicy::random, rng).graph;
}

}  // namespace

TEST(ConditionI, Examples) {
  EXPECT_TRUE(check_condition_I(butterfly(), {1, 2}, 2));
  EXPECT_FALSE(check_condition_I(butterfly(), {1, 2}, 3));
  EXPECT_TRUE(check_condition_I(butterfly(), {}, 2));
  EXPECT_FALSE(check_condition_I(fixtures::path5(), {}, 2));  // P2 has no star
}

TEST(ConditionI, RejectsStarsAndMixedFamilies) {
  EXPECT_FALSE(check_condition_I(butterfly(), {1, 4}, 2));
  EXPECT_THROW(check_condition_I(butterfly(), {1, 3}, 2), Error);
  EXPECT_THROW(check_condition_I(butterfly(), {1}, 1), Error);
}

TEST(ConditionII, Examples) {
  EXPECT_TRUE(check_condition_II(two_fan(), {2, 3}, 2));
  EXPECT_FALSE(check_condition_II(two_fan(), {2, 3}, 3));
  EXPECT_FALSE(check_condition_II(butterfly(), {1, 2}, 2));
}

TEST(ConditionII, Errors) {
  try {
    check_condition_II(two_fan(), {2}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::family_too_small);
  }
  try {
    check_condition_II(two_fan(), {2, 5}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::mixed_partition);
  }
}

TEST(ConditionWitness, ReportsSharedIntersection) {
  auto w = condition_witness(two_fan(), {2, 3}, 2);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->kind, ConditionKind::condition_ii);
  EXPECT_EQ(w->shared_intersection, (VertexSet{7}));
  auto b = condition_witness(butterfly(), {1, 2}, 2);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->kind, ConditionKind::condition_i);
  EXPECT_TRUE(b->shared_intersection.empty());
  EXPECT_FALSE(condition_witness(butterfly(), {1, 2}, 3));
}

TEST(PairCompatible, Examples) {
  EXPECT_TRUE(pair_compatible(butterfly(), 1, 2, 2));
  EXPECT_TRUE(pair_compatible(two_fan(), 2, 3, 2));

  auto k = fixtures::complete(3, 3);
  std::vector<Edge> e;
  for (auto [u, v] : k.edges())
    if (!(u == 0 && v == 3)) e.emplace_back(u, v);
  auto minus_one = build_bipartite({0, 1, 2}, {3, 4, 5}, e);
  EXPECT_FALSE(pair_compatible(minus_one, 1, 2, 2));  // both have empty remote sets
  EXPECT_FALSE(pair_compatible(minus_one, 0, 1, 2));

  EXPECT_THROW(pair_compatible(butterfly(), 1, 1, 2), Error);
  EXPECT_THROW(pair_compatible(butterfly(), 1, 3, 2), Error);
}

TEST(StarRepairOp, Path5ChoosingTwo) {
  auto g = make_star(fixtures::path5(), 2);
  std::vector<Edge> e{{1, 2}, {3, 2}, {3, 4}};
  EXPECT_EQ(g, build_bipartite({1, 3}, {2, 4}, e));
  EXPECT_TRUE(is_star(g, 2));
  EXPECT_TRUE(is_star(g, 3));
}

TEST(StarRepairOp, AlreadyStarred) {
  Rng rng(1);
  auto r = ensure_star_vertices(butterfly(), StarPolicy::random, rng);
  EXPECT_EQ(r.graph, butterfly());
  EXPECT_FALSE(r.chosen[0]);
  EXPECT_FALSE(r.chosen[1]);
  auto k = fixtures::complete(2, 4);
  EXPECT_EQ(ensure_star_vertices(k, StarPolicy::min_remote_set, rng).graph, k);
}

TEST(StarRepairOp, Path5RepairsP2Only) {
  Rng rng(2);
  for (auto policy : {StarPolicy::random, StarPolicy::min_remote_set}) {
    auto r = ensure_star_vertices(fixtures::path5(), policy, rng);
    EXPECT_FALSE(r.chosen[0]);  // 3 is already a star of P1
    ASSERT_TRUE(r.chosen[1]);
    EXPECT_EQ(r.removed[1].size(), 1u);
    EXPECT_TRUE(has_stars_in_both(r.graph));
  }
}

TEST(StarRepairOp, MinRemoteSetPicksSmallest) {
  // P1 = {1,2,3}: N̄(1) = {6}, N̄(2) = {5,6}, N̄(3) = {4,5}; no P1 star
  std::vector<Edge> e{{1, 4}, {1, 5}, {2, 4}, {3, 6}};
  auto g = build_bipartite({1, 2, 3}, {4, 5, 6}, e);
  Rng rng(0);
  auto r = ensure_star_vertices(g, StarPolicy::min_remote_set, rng);
  EXPECT_EQ(r.chosen[0], VertexId{1});
  EXPECT_EQ(r.removed[0], (VertexSet{6}));
}

TEST(StarRepairOp, Degenerate) {
  std::vector<Edge> none;
  Rng rng(0);
  EXPECT_THROW(ensure_star_vertices(build_bipartite({1}, {}, none), StarPolicy::random, rng), Error);
  std::vector<Edge> e{{1, 3}};
  auto g = build_bipartite({1, 2}, {3}, e);
  try {
    make_star(g, 2);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::degenerate_graph);
  }
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST(StarRepairProperties, IdempotentAndComplete) {
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    auto g = fixtures::random_graph(rng, 2 + t % 9, 2 + t % 11);
    auto policy = t % 2 ? StarPolicy::random : StarPolicy::min_remote_set;
    auto once = ensure_star_vertices(g, policy, rng);
    EXPECT_TRUE(has_star(once.graph, Side::p1));
    EXPECT_TRUE(has_star(once.graph, Side::p2));
    auto twice = ensure_star_vertices(once.graph, policy, rng);
    EXPECT_EQ(twice.graph, once.graph);
    EXPECT_FALSE(twice.chosen[0] || twice.chosen[1]);
  }
}

TEST(ConditionProperties, DownwardClosure) {
  Rng rng(22);
  int checked_i = 0, checked_ii = 0;
  for (int t = 0; t < 1500; ++t) {
    auto g = repaired(rng, 4 + t % 6, 4 + t % 7);
    int n = 2 + t % 2;
    for (Side s : {Side::p1, Side::p2}) {
      auto fam = random_family(g, s, rng, 0.5);
      std::vector<VertexId> members(fam.begin(), fam.end());
      bool one = check_condition_I(g, fam, n);
      bool two = fam.size() >= 2 && check_condition_II(g, fam, n);
      if (!one && !two) continue;
      for (unsigned long mask = 0; mask < (1ul << members.size()); ++mask) {
        VertexSet sub;
        for (std::size_t i = 0; i < members.size(); ++i)
          if (mask >> i & 1) sub.insert(members[i]);
        if (one) {
          EXPECT_TRUE(check_condition_I(g, sub, n));
          ++checked_i;
        }
        if (two && sub.size() >= 2) {
          EXPECT_TRUE(check_condition_II(g, sub, n));
          ++checked_ii;
        }
      }
    }
  }
  EXPECT_GT(checked_i, 100);
  EXPECT_GT(checked_ii, 10);
}

TEST(ConditionProperties, PairFormOfConditionII) {
  Rng rng(23);
  for (int t = 0; t < 1000; ++t) {
    auto g = repaired(rng, 3 + t % 6, 3 + t % 8);
    int n = 2 + t % 3;
    auto side = t % 2 ? Side::p1 : Side::p2;
    const auto& ids = g.vertices(side);
    if (ids.size() < 2) continue;
    VertexId u = ids[uniform_index(rng, ids.size())];
    VertexId v = ids[uniform_index(rng, ids.size())];
    if (u == v) continue;
    auto ru = opposite_remote_set(g, u), rv = opposite_remote_set(g, v);
    VertexSet common;
    std::ranges::set_intersection(ru, rv, std::inserter(common, common.end()));
    bool expected = !common.empty() && ru.size() - common.size() >= std::size_t(n - 1) &&
                    rv.size() - common.size() >= std::size_t(n - 1) && has_stars_in_both(g);
    EXPECT_EQ(check_condition_II(g, {u, v}, n), expected);
  }
}

TEST(ConditionProperties, MutuallyExclusive) {
  Rng rng(24);
  for (int t = 0; t < 1000; ++t) {
    auto g = repaired(rng, 3 + t % 7, 3 + t % 7);
    auto fam = random_family(g, t % 2 ? Side::p1 : Side::p2, rng, 0.4);
    if (fam.size() < 2) continue;
    EXPECT_FALSE(check_condition_I(g, fam, 2) && check_condition_II(g, fam, 2));
  }
}

TEST(ConditionProperties, MatchReferenceTranscription) {
  Rng rng(25);
  int positives = 0;
  for (int t = 0; t < 1000; ++t) {
    auto g = t % 3 ? repaired(rng, 2 + t % 9, 2 + t % 10) : fixtures::loose_graph(rng, 3, 4, 0.6);
    auto r = ref::from(g);
    int n = 2 + t % 3;
    for (Side s : {Side::p1, Side::p2}) {
      for (double p : {0.2, 0.5}) {
        auto fam = random_family(g, s, rng, p);
        bool one = check_condition_I(g, fam, n);
        EXPECT_EQ(one, ref::condition_I(r, fam, n));
        positives += one;
        if (fam.size() >= 2) {
          EXPECT_EQ(check_condition_II(g, fam, n), ref::condition_II(r, fam, n));
        }
      }
    }
  }
  EXPECT_GT(positives, 200);
}
