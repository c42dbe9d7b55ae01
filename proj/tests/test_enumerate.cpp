#include <gtest/gtest.h>

#include <map>

#include "raagtree/egf.hpp"
#include "raagtree/enumerate.hpp"

using namespace raagtree;

TEST(Enumerate, SmallCounts) {
  std::uint64_t u = 0, r = 0;
  enumerate_unrooted(3, [&](const LabeledTree&) { ++u; });
  enumerate_rooted(3, [&](const RootedTree&) { ++r; });
  EXPECT_EQ(u, 3u);
  EXPECT_EQ(r, 9u);
  u = r = 0;
  enumerate_unrooted(1, [&](const LabeledTree&) { ++u; });
  enumerate_rooted(1, [&](const RootedTree&) { ++r; });
  EXPECT_EQ(u, 1u);
  EXPECT_EQ(r, 1u);
}

TEST(Enumerate, EightNodes) {
  std::uint64_t u = 0;
  enumerate_unrooted(8, [&](const LabeledTree&) { ++u; });
  EXPECT_EQ(u, 262144u);
}

TEST(Enumerate, BudgetGuard) {
  try {
    enumerate_unrooted(10, [](const LabeledTree&) {}, 9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
}

TEST(Enumerate, RangesPartitionTheCodeSpace) {
  std::uint64_t total = 0;
  for (std::uint64_t lo = 0; lo < 1296; lo += 100) for_each_unrooted_in_range(6, lo, lo + 100, [&](const LabeledTree&) { ++total; });
  EXPECT_EQ(total, 1296u);
}

TEST(Rooted, BoundaryDistanceExamples) {
  EXPECT_EQ(root_boundary_distance(path_tree(3), 1), 2);
  EXPECT_EQ(root_boundary_distance(LabeledTree::from_edges(1, {}), 1), 0);
  EXPECT_EQ(root_boundary_distance(path_tree(4), 1), 3);
  // the degree-one reading puts an end of the path on the boundary
  EXPECT_EQ(root_leaf_distance(path_tree(4), 1), 0);
}

TEST(Rooted, CountsMatchSeriesAtSmallN) {
  std::uint64_t at_least_2 = 0, at_least_3 = 0;
  enumerate_rooted(3, [&](const RootedTree& rt) { at_least_2 += root_boundary_distance(rt) >= 2; });
  enumerate_rooted(4, [&](const RootedTree& rt) { at_least_3 += root_boundary_distance(rt) >= 3; });
  EXPECT_EQ(at_least_2, 6u);
  EXPECT_EQ(at_least_3, 24u);
}

TEST(Rooted, SecondGeneration) {
  EXPECT_EQ(second_generation_count(path_tree(7), 4), 2);
  EXPECT_EQ(second_generation_count(star_tree(4), 1), 0);
  for (int n = 1; n <= 7; ++n)
    enumerate_rooted(n, [&](const RootedTree& rt) {
      auto d = rt.tree.distances_from(rt.root);
      ASSERT_EQ(second_generation_count(rt), std::count(d.begin() + 1, d.end(), 2));
    });
}

TEST(Sampling, Deterministic) {
  auto a = sample_uniform(9, 42, 200, 4), b = sample_uniform(9, 42, 200, 4);
  EXPECT_EQ(a, b);
  auto c = sample_uniform(9, 43, 200, 4);
  EXPECT_NE(a, c);
}

TEST(Sampling, UniformOnThreeNodes) {
  std::map<int, int> freq;
  for (auto& t : sample_uniform(3, 5, 30000, 3))
    for (int v = 1; v <= 3; ++v)
      if (t.degree(v) == 2) ++freq[v];
  const double sigma = std::sqrt(30000 * (1.0 / 3) * (2.0 / 3));
  for (int v = 1; v <= 3; ++v) EXPECT_NEAR(freq[v], 10000, 3 * sigma);
}

TEST(Sampling, NoDeepNodeOnFour) {
  for (auto& t : sample_uniform(4, 9, 2000)) EXPECT_TRUE(boundary_profile(t).deep.empty());
}

TEST(Sampling, WorkersDoNotChangeResult) {
  MonteCarloOptions one{20000, 3, 8, 1}, four{20000, 3, 8, 4};
  auto a = estimate_monte_carlo(Statistic::UpsilonPerNode, 9, one);
  auto b = estimate_monte_carlo(Statistic::UpsilonPerNode, 9, four);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(*a.stderr_value, *b.stderr_value);
}

TEST(Estimate, ExhaustiveProbRootDeepMatchesSeries) {
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(estimate_exhaustive(Statistic::ProbRootDeep, n).exact, exact_prob_root_deep(n)) << n;
}

TEST(Estimate, DeepFractionAtSevenIsTheRootedLeafCount) {
  auto r = estimate_exhaustive(Statistic::DeepFraction, 7);
  auto b = rooted_unrooted_bridge(7);
  mpq_class expected(mpz_class(b.rooted_deep), mpz_class(117649));
  expected.canonicalize();
  EXPECT_EQ(*r.exact, expected);
  EXPECT_FALSE(r.ci95.has_value());
}

TEST(Estimate, MeanNGivenDeepUndefinedWithoutDeepRoots) {
  try {
    estimate_exhaustive(Statistic::MeanNGivenDeep, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivByZero);
  }
}

TEST(Bridge, Examples) {
  auto b4 = rooted_unrooted_bridge(4);
  EXPECT_EQ(b4.sum_deep, 0u);
  EXPECT_EQ(b4.rooted_deep, 0u);
  // the childless reading counts the 24 end-rooted paths
  EXPECT_EQ(b4.rooted_deep_childless, 24u);
  EXPECT_TRUE(rooted_unrooted_bridge_check(7));
}

TEST(Bridge, HoldsUpToEight) {
  for (int n = 1; n <= 8; ++n) EXPECT_TRUE(rooted_unrooted_bridge_check(n)) << n;
}
