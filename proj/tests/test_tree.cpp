#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "raagtree/enumerate.hpp"
#include "raagtree/tree.hpp"

using namespace raagtree;

TEST(LabeledTree, AcceptsSingleEdge) {
  auto t = LabeledTree::from_edges(2, {{1, 2}});
  EXPECT_EQ(t.size(), 2);
  EXPECT_TRUE(t.adjacent(1, 2));
}

TEST(LabeledTree, RejectsTriangle) {
  try {
    LabeledTree::from_edges(3, {{1, 2}, {1, 3}, {2, 3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotATree);
  }
}

TEST(LabeledTree, RejectsDisconnectedAndBadLabels) {
  EXPECT_THROW(LabeledTree::from_edges(4, {{1, 2}, {1, 2}, {3, 4}}), Error);
  try {
    LabeledTree::from_edges(3, {{1, 2}, {2, 7}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadLabel);
  }
  EXPECT_THROW(LabeledTree::from_edges(3, {{1, 1}, {2, 3}}), Error);
}

TEST(LabeledTree, SingleNodeIsATree) { EXPECT_EQ(LabeledTree::from_edges(1, {}).size(), 1); }

TEST(LabeledTree, NeighboursSorted) {
  auto t = LabeledTree::from_edges(5, {{3, 5}, {3, 1}, {3, 4}, {2, 1}});
  auto nb = t.neighbors(3);
  EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
  EXPECT_EQ(t.degree(3), 3);
}

TEST(Prufer, TwoNodes) {
  auto t = prufer_decode(PruferCode::make(2, {}));
  EXPECT_TRUE(t.adjacent(1, 2));
}

TEST(Prufer, ThreeNodeCodes) {
  std::set<std::vector<Edge>> trees;
  for (int c = 1; c <= 3; ++c) {
    auto t = prufer_decode(PruferCode::make(3, {c}));
    EXPECT_EQ(t.degree(c), 2);
    trees.insert(t.edges());
  }
  EXPECT_EQ(trees.size(), 3u);
}

TEST(Prufer, RoundTripExhaustive) {
  for (int n = 3; n <= 7; ++n) {
    std::set<std::vector<Edge>> seen;
    std::vector<int> code(n - 2, 1);
    for (;;) {
      auto t = prufer_decode(PruferCode::make(n, code));
      EXPECT_EQ(prufer_encode(t).code, code);
      seen.insert(t.edges());
      int j = n - 3;
      while (j >= 0 && code[j] == n) code[j--] = 1;
      if (j < 0) break;
      ++code[j];
    }
    EXPECT_EQ(seen.size(), unrooted_count(n));
  }
}

TEST(Prufer, SmallestLeafFirst) {
  // code (4,4) on 4 nodes: leaves 1,2,3; 1 joins 4, then 2 joins 4, then 3-4
  auto t = prufer_decode(PruferCode::make(4, {4, 4}));
  EXPECT_EQ(t.degree(4), 3);
  EXPECT_THROW(PruferCode::make(4, {5, 1}), Error);
  EXPECT_THROW(PruferCode::make(4, {1}), Error);
}

TEST(Boundary, PathSeven) {
  auto p = boundary_profile(path_tree(7));
  EXPECT_EQ(p.deep, std::vector<int>{4});
  EXPECT_EQ(p.upsilon, 2);
  EXPECT_FALSE(p.shallow);
}

TEST(Boundary, StarFourIsShallow) {
  auto p = boundary_profile(star_tree(4));
  EXPECT_TRUE(p.deep.empty());
  EXPECT_EQ(p.upsilon, 0);
  EXPECT_TRUE(p.shallow);
}

TEST(Boundary, PathSixIsShallow) {
  auto p = boundary_profile(path_tree(6));
  EXPECT_TRUE(p.shallow);
  EXPECT_EQ(p.to_boundary[3], 2);
  EXPECT_EQ(p.to_boundary[4], 2);
}

TEST(Boundary, SingleNodeRejected) {
  try {
    boundary_profile(LabeledTree::from_edges(1, {}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooSmall);
  }
}

TEST(Boundary, PropertiesExhaustive) {
  for (int n = 2; n <= 8; ++n)
    enumerate_unrooted(n, [&](const LabeledTree& t) {
      auto p = boundary_profile(t);
      ASSERT_GE(p.upsilon, 2 * static_cast<std::int64_t>(p.deep.size()));
      bool all_two = true;
      for (int v : p.deep) all_two = all_two && second_neighbourhood_size(t, v) == 2;
      ASSERT_EQ(p.upsilon == 2 * static_cast<std::int64_t>(p.deep.size()), all_two);
      for (int v = 1; v <= n; ++v) {
        ASSERT_EQ(p.to_boundary[v] == 0, t.degree(v) == 1);
        for (int w : t.neighbors(v)) ASSERT_LE(std::abs(p.to_boundary[v] - p.to_boundary[w]), 1);
      }
    });
}

TEST(Preorder, PathThree) {
  auto t = path_tree(3);
  EXPECT_TRUE(leq(t, 1, 3));
  EXPECT_TRUE(sim(t, 1, 3));
  EXPECT_TRUE(is_thin(t, 2));
  EXPECT_FALSE(is_thin(t, 1));
  for (int v = 1; v <= 3; ++v) EXPECT_TRUE(leq(t, v, v));
  EXPECT_THROW(leq(t, 1, 4), Error);
}

TEST(Preorder, CharacterizationAgreesExhaustive) {
  for (int n = 3; n <= 8; ++n)
    enumerate_unrooted(n, [&](const LabeledTree& t) {
      for (int v = 1; v <= n; ++v)
        for (int w = 1; w <= n; ++w) {
          ASSERT_EQ(leq(t, v, w), leq_tree_characterization(t, v, w));
          if (v != w) ASSERT_EQ(sim(t, v, w), sim_tree_characterization(t, v, w));
        }
    });
  EXPECT_THROW(leq_tree_characterization(path_tree(2), 1, 2), Error);
}

TEST(Preorder, ReflexiveSpecialCase) {
  // an interior node is not a leaf, yet v <= v
  EXPECT_TRUE(leq_tree_characterization(path_tree(5), 3, 3));
}

TEST(Canonical, InvariantUnderRelabeling) {
  std::mt19937 rng(7);
  auto t = LabeledTree::from_edges(7, {{1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}, {5, 7}});
  for (int r = 0; r < 20; ++r) {
    std::vector<int> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    EXPECT_EQ(canonical_form(relabel(t, perm)), canonical_form(t));
  }
  EXPECT_NE(canonical_form(path_tree(7)), canonical_form(t));
}

TEST(Canonical, ClassCounts) {
  // unlabeled trees on 5, 6, 7 nodes
  for (auto [n, classes] : {std::pair{5, 3}, {6, 6}, {7, 11}}) {
    std::set<std::string> shapes;
    enumerate_unrooted(n, [&](const LabeledTree& t) { shapes.insert(canonical_form(t)); });
    EXPECT_EQ(static_cast<int>(shapes.size()), classes);
  }
}

TEST(TextFormat, EdgeListAndPrufer) {
  auto a = parse_tree("# comment\n7\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n");
  auto b = parse_tree("prufer: 2 3 4\n 5 6\n");
  EXPECT_EQ(a, b);
  EXPECT_EQ(parse_tree(to_text(a)), a);
  EXPECT_THROW(parse_tree("3\n1 2\n"), Error);
  EXPECT_THROW(parse_tree("x\n"), Error);
}
