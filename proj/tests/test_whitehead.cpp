#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <map>
#include <set>

#include "raagtree/enumerate.hpp"
#include "raagtree/whitehead.hpp"

using namespace raagtree;

namespace {

// The four-case map extends to a homomorphism exactly when the images of
// adjacent generators commute.
bool defines_homomorphism(const AutContext& ctx, LetterSet A, Letter a) {
  Whitehead2 w{A, a};
  const auto& t = ctx.tree();
  for (auto [u, v] : t.edges()) {
    Word x = image(w, u), y = image(w, v);
    if (normal_form(t, concat(x, y)) != normal_form(t, concat(y, x))) return false;
  }
  return true;
}

}  // namespace

TEST(Whitehead2, ShapeErrors) {
  auto t = path_tree(3);
  try {
    is_valid_type2(t, bit(Letter::pos(1)), Letter::pos(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedPair);
  }
  EXPECT_THROW(is_valid_type2(t, pair_bits(2), Letter::pos(2)), Error);
}

TEST(Whitehead2, PathThreeExamples) {
  auto t = path_tree(3);
  // leaf 1 is dominated by leaf 3: transvection 1 -> 1 3
  EXPECT_TRUE(is_valid_type2(t, letter_set({Letter::pos(3), Letter::pos(1)}), Letter::pos(3)));
  // 2 is not dominated by 1
  EXPECT_FALSE(is_valid_type2(t, letter_set({Letter::pos(1), Letter::pos(2)}), Letter::pos(1)));
  // but adding both letters of 2 is harmless, since 2 commutes with 1
  EXPECT_TRUE(is_valid_type2(t, pair_bits(2) | bit(Letter::pos(1)), Letter::pos(1)));
}

TEST(Whitehead2, ValidityIsTheHomomorphismCondition) {
  for (int n = 2; n <= 5; ++n)
    enumerate_unrooted(n, [&](const LabeledTree& t) {
      AutContext ctx(t);
      std::set<Whitehead2> valid;
      for (int i = 0; i < 2 * n; ++i) {
        Letter a = Letter::from_index(i);
        for (LetterSet A = 0; A < (LetterSet{1} << (2 * n)); ++A) {
          if (!contains(A, a) || contains(A, a.inverse())) continue;
          bool v = is_valid_type2(ctx, A, a);
          ASSERT_EQ(v, defines_homomorphism(ctx, A, a)) << to_text(t) << to_string(Whitehead2{A, a});
          if (v) valid.insert({A, a});
        }
      }
      auto raw = enumerate_type2(ctx, Forms::Raw);
      std::set<Whitehead2> listed(raw.begin(), raw.end());
      ASSERT_EQ(listed.size(), raw.size());
      ASSERT_EQ(listed, valid);
    });
}

TEST(Whitehead2, CanonicalFormsCoincideOnlyAcrossInverseLetters) {
  // (A, a) and (A', a⁻¹) can agree when a commutes with what it multiplies
  for (auto t : {path_tree(5), star_tree(5), LabeledTree::from_edges(6, {{1, 2}, {2, 3}, {3, 4}, {3, 5}, {2, 6}})}) {
    AutContext ctx(t);
    auto canon = enumerate_type2(ctx, Forms::Canonical);
    std::map<std::vector<Word>, Whitehead2> seen;
    for (auto& w : canon) {
      EXPECT_FALSE(is_identity(ctx, w));
      EXPECT_EQ(canonical(ctx, w), w);
      auto [it, fresh] = seen.try_emplace(to_automorphism(ctx, w).images, w);
      if (!fresh) EXPECT_EQ(it->second.a, w.a.inverse()) << to_string(w);
    }
    for (auto& w : enumerate_type2(ctx, Forms::Raw))
      EXPECT_TRUE(aut_equal(ctx, to_automorphism(ctx, w), to_automorphism(ctx, canonical(ctx, w))));
  }
}

TEST(Whitehead2, InverseIsTheSwappedPair) {
  auto t = LabeledTree::from_edges(6, {{1, 2}, {2, 3}, {3, 4}, {3, 5}, {2, 6}});
  AutContext ctx(t);
  for (auto& w : enumerate_type2(ctx, Forms::Raw)) {
    Whitehead2 inv{(w.set & ~bit(w.a)) | bit(w.a.inverse()), w.a.inverse()};
    ASSERT_TRUE(is_valid_type2(ctx, inv.set, inv.a));
    auto id = compose(ctx, to_automorphism(ctx, inv), to_automorphism(ctx, w));
    ASSERT_TRUE(aut_equal(ctx, id, identity_automorphism(6)));
  }
}

TEST(NamedGenerators, PartialConjugationCount) {
  for (int n = 3; n <= 7; ++n)
    enumerate_unrooted(n, [&](const LabeledTree& t) {
      AutContext ctx(t);
      auto g = named_generators(ctx);
      std::vector<std::size_t> at(n + 1, 0);
      for (auto& pc : g.partial_conjugations) ++at[pc.a];
      for (int a = 1; a <= n; ++a) {
        std::size_t expected = 0;
        for (int c : t.neighbors(a)) expected += t.degree(c) - 1;
        ASSERT_EQ(at[a], expected);
      }
      for (auto& pc : g.partial_conjugations) ASSERT_TRUE(is_valid_type2(ctx, pc.form.set, pc.form.a));
      for (auto& tv : g.transvections) ASSERT_TRUE(is_valid_type2(ctx, tv.set, tv.a));
    });
}

TEST(NamedGenerators, ConjugationIsInner) {
  auto t = path_tree(5);
  AutContext ctx(t);
  auto c = conjugation(ctx, Letter::pos(2));
  ASSERT_TRUE(is_valid_type2(ctx, c.set, c.a));
  auto f = to_automorphism(ctx, c);
  for (int v = 1; v <= 5; ++v)
    EXPECT_EQ(f.images[v - 1], normal_form(t, {Letter::neg(2), Letter::pos(v), Letter::pos(2)}));
}

TEST(Omega, SizeIsUpsilon) {
  for (int n = 2; n <= 8; ++n)
    enumerate_unrooted(n, [&](const LabeledTree& t) {
      AutContext ctx(t);
      ASSERT_EQ(static_cast<std::int64_t>(omega(ctx).size()), boundary_profile(t).upsilon);
    });
}

TEST(Omega, PhiOnPathSeven) {
  auto t = path_tree(7);
  AutContext ctx(t);
  auto om = omega(ctx);
  ASSERT_EQ(om.size(), 2u);
  EXPECT_EQ(phi(ctx, om, partial_conjugation(ctx, Letter::pos(4), 0)), (std::vector<long>{1, 0}));
  EXPECT_EQ(phi(ctx, om, partial_conjugation(ctx, Letter::pos(4), 1)), (std::vector<long>{0, 1}));
  auto inv = partial_conjugation(ctx, Letter::neg(4), 1);
  EXPECT_EQ(phi(ctx, om, inv), (std::vector<long>{0, -1}));
  EXPECT_EQ(phi(ctx, om, conjugation(ctx, Letter::pos(4))), (std::vector<long>{1, 1}));
  EXPECT_EQ(phi(ctx, om, transvection(Letter::pos(1), Letter::pos(3))), (std::vector<long>{0, 0}));
}

TEST(TypeOne, DecomposeRoundTrip) {
  auto t = LabeledTree::from_edges(8, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {5, 6}, {5, 7}, {5, 8}});
  AutContext ctx(t);
  TypeOneGroup G(ctx);
  ASSERT_EQ(G.classes().size(), 2u);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = Whitehead1::identity(8);
    for (const auto& cl : G.classes()) {
      auto img = cl;
      std::shuffle(img.begin(), img.end(), rng);
      for (std::size_t i = 0; i < cl.size(); ++i)
        s.image[cl[i] - 1] = (rng() & 1) ? Letter::neg(img[i]) : Letter::pos(img[i]);
    }
    ASSERT_TRUE(G.contains(s));
    ASSERT_TRUE(is_valid_type1(t, s));
    ASSERT_EQ(G.evaluate(G.decompose(s)).image, s.image);
  }
  EXPECT_FALSE(G.contains(Whitehead1::inversion(8, 1)));
  EXPECT_THROW(G.decompose(Whitehead1::swap(8, 1, 5)), Error);
}

TEST(TypeOne, RelationsHold) {
  AutContext ctx(star_tree(5));
  TypeOneGroup G(ctx);
  for (auto& r : G.relations()) EXPECT_EQ(G.evaluate(r).image, Whitehead1::identity(5).image);
  // the hyperoctahedral group on four letters has 2^4 4! elements
  std::set<std::vector<int>> seen;
  std::vector<Whitehead1> frontier{Whitehead1::identity(5)};
  auto key = [](const Whitehead1& s) {
    std::vector<int> k;
    for (Letter x : s.image) k.push_back(x.value());
    return k;
  };
  seen.insert(key(frontier[0]));
  while (!frontier.empty()) {
    auto s = frontier.back();
    frontier.pop_back();
    for (auto& g : G.generators()) {
      auto u = s.after(g.sigma);
      if (seen.insert(key(u)).second) frontier.push_back(u);
    }
  }
  EXPECT_EQ(seen.size(), 384u);
}

TEST(Json, RoundTrip) {
  Whitehead2 w{letter_set({Letter::pos(3), Letter::neg(1), Letter::pos(1)}), Letter::pos(3)};
  EXPECT_EQ(whitehead2_from_json(to_json(w)), w);
  EXPECT_THROW(whitehead2_from_json(nlohmann::json::parse(R"({"a":"+1","A":["-1"]})")), Error);
}
