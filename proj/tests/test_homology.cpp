#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>

#include "raagtree/homology.hpp"

using namespace raagtree;

namespace {

PresentationOptions allow(int n) {
  PresentationOptions o;
  o.max_nodes = n;
  return o;
}

}  // namespace

TEST(Homology, SingleEdgeIsGL2) {
  auto h = betti_one(path_tree(2));
  EXPECT_EQ(h.b1, 0);
  EXPECT_EQ(h.torsion, (std::vector<mpz_class>{2, 2}));
  EXPECT_TRUE(h.rank_cross_checked);
  EXPECT_EQ(h.failures, 0u);
}

TEST(Homology, PathBettiNumbers) {
  const std::vector<std::pair<int, long>> expected{{3, 0}, {4, 6}, {5, 7}, {6, 8}};
  for (auto [n, b1] : expected) {
    auto h = betti_one(path_tree(n), allow(n));
    EXPECT_EQ(h.b1, b1) << n;
    EXPECT_TRUE(h.rank_cross_checked);
    EXPECT_EQ(h.failures, 0u);
  }
}

TEST(Homology, StarsVanish) {
  for (int n = 4; n <= 5; ++n) {
    auto h = betti_one(star_tree(n));
    EXPECT_EQ(h.b1, 0);
    EXPECT_EQ(h.torsion, std::vector<mpz_class>{2});
  }
}

TEST(Homology, RelabelingInvariance) {
  std::mt19937 rng(2);
  auto t = LabeledTree::from_edges(6, {{1, 2}, {2, 3}, {3, 4}, {3, 5}, {2, 6}});
  auto base = betti_one(t);
  for (int r = 0; r < 3; ++r) {
    std::vector<int> perm(7);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    auto h = betti_one(relabel(t, perm));
    EXPECT_EQ(h.b1, base.b1);
    EXPECT_EQ(h.torsion, base.torsion);
    EXPECT_EQ(h.generators, base.generators);
  }
}

TEST(Homology, FullVerificationAgrees) {
  PresentationOptions all;
  all.verify = Verify::All;
  auto t = LabeledTree::from_edges(5, {{1, 2}, {2, 3}, {2, 4}, {4, 5}});
  auto P = build_presentation(t, all);
  EXPECT_EQ(P.failures(), 0u);
  std::uint64_t verified = 0;
  for (auto& [s, tl] : P.tally) verified += tl.verified;
  EXPECT_EQ(verified, P.instances());
  EXPECT_EQ(betti_one(t, all).b1, betti_one(t).b1);
}

TEST(Homology, BudgetGuard) {
  try {
    build_presentation(path_tree(7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
  EXPECT_THROW(build_presentation(LabeledTree::from_edges(1, {})), Error);
}

TEST(BettiBound, BoundOnSmallTrees) {
  for (auto t : {path_tree(5), path_tree(6), LabeledTree::from_edges(6, {{1, 2}, {2, 3}, {3, 4}, {3, 5}, {2, 6}})}) {
    auto rep = check_betti_bound(t);
    EXPECT_TRUE(rep.ok()) << to_text(t);
    EXPECT_EQ(rep.upsilon, 0);
  }
}

TEST(BettiBound, PathSeven) {
  auto rep = check_betti_bound(path_tree(7), allow(7));
  EXPECT_EQ(rep.upsilon, 2);
  EXPECT_EQ(rep.h1.b1, 10);
  EXPECT_TRUE(rep.phi_kills_relators);
  EXPECT_TRUE(rep.omega_independent);
  EXPECT_TRUE(rep.ok());
}

TEST(Vanishing, ClassMembership) {
  EXPECT_TRUE(in_vanishing_class(star_tree(4)));
  EXPECT_FALSE(in_vanishing_class(path_tree(4)));
  auto ds = LabeledTree::from_edges(8, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {5, 6}, {5, 7}, {5, 8}});
  EXPECT_TRUE(in_vanishing_class(ds));
}

TEST(Vanishing, LemmaOnSmallTrees) {
  for (auto t : {star_tree(4), star_tree(5), LabeledTree::from_edges(6, {{1, 2}, {1, 3}, {1, 4}, {4, 5}, {4, 6}})}) {
    auto rep = check_vanishing_lemma(t);
    EXPECT_GT(rep.eligible, 0u);
    EXPECT_TRUE(rep.ok()) << to_text(t);
  }
}

TEST(Presentation, MatrixExport) {
  auto P = build_presentation(path_tree(3));
  std::ostringstream out;
  write_matrix(out, P);
  std::istringstream in(out.str());
  std::size_t rows = 0, cols = 0;
  in >> rows >> cols;
  EXPECT_EQ(rows, P.rows.size());
  EXPECT_EQ(cols, P.columns());
}

TEST(Presentation, CoincidingColumnsAreIdentifiedByRelators) {
  for (auto t : {path_tree(5), star_tree(5)}) {
    AutContext ctx(t);
    auto P = build_presentation(t);
    auto L = relator_lattice(P);
    std::map<std::vector<Word>, int> first;
    int coincident = 0;
    for (std::size_t c = 0; c < P.type2.size(); ++c) {
      auto [it, fresh] = first.try_emplace(to_automorphism(ctx, P.type2[c]).images, static_cast<int>(c));
      if (fresh) continue;
      ++coincident;
      EXPECT_TRUE(L.in_rational_span({{it->second, mpz_class(1)}, {static_cast<int>(c), mpz_class(-1)}}));
    }
    EXPECT_GT(coincident, 0);
  }
}
