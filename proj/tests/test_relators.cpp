#include <gtest/gtest.h>

#include "raagtree/enumerate.hpp"
#include "raagtree/relators.hpp"

using namespace raagtree;

namespace {

void expect_clean(const LabeledTree& t) {
  auto rep = verify_relators(t);
  EXPECT_EQ(rep.failures(), 0u) << to_text(t) << (rep.failure_samples.empty() ? "" : rep.failure_samples[0]);
  EXPECT_GT(rep.instances(), 0u);
}

}  // namespace

TEST(Relators, PathsAndStars) {
  for (int n = 2; n <= 5; ++n) expect_clean(path_tree(n));
  expect_clean(star_tree(4));
  expect_clean(star_tree(5));
}

TEST(Relators, EveryTreeOnFourNodes) {
  enumerate_unrooted(4, [](const LabeledTree& t) { expect_clean(t); });
}

TEST(Relators, EveryFamilyIsExercised) {
  // star 5 has a class of four leaves, so the type (1) families appear too
  auto rep = verify_relators(star_tree(5));
  for (Schema s : kAllSchemas) EXPECT_GT(rep.schemas[s].instances, 0u) << to_string(s);
}

TEST(Relators, SchemaNames) {
  EXPECT_STREQ(to_string(Schema::R6), "R6'");
  EXPECT_STREQ(to_string(Schema::R10), "R10");
}

TEST(Relators, NegativeControl) {
  RelatorContext rc(path_tree(4));
  const auto& ctx = rc.context();
  // a transvection is not an involution
  RelatorInstance r;
  r.schema = Schema::R1;
  auto tv = transvection(Letter::pos(1), Letter::pos(3));
  ASSERT_TRUE(is_valid_type2(ctx, tv.set, tv.a));
  r.left(Term::of(tv));
  r.left(Term::of(tv));
  EXPECT_FALSE(rc.holds(r));
  // opposite transvections on a 3-path do not commute
  RelatorContext rc3(path_tree(3));
  RelatorInstance c;
  c.schema = Schema::R3;
  auto x = transvection(Letter::pos(1), Letter::pos(3)), y = transvection(Letter::pos(3), Letter::pos(1));
  c.left(Term::of(x));
  c.left(Term::of(y));
  c.right(Term::of(y));
  c.right(Term::of(x));
  EXPECT_FALSE(rc3.holds(c));
  // and the genuine inverse pair does close up
  RelatorInstance ok;
  ok.left(Term::of(tv));
  ok.left(Term::of({bit(Letter::pos(1)) | bit(Letter::neg(3)), Letter::neg(3)}));
  EXPECT_TRUE(rc.holds(ok));
}

TEST(Relators, CompositionOrder) {
  // products act rightmost first
  auto t = path_tree(3);
  RelatorContext rc(t);
  const auto& ctx = rc.context();
  auto f = transvection(Letter::pos(1), Letter::pos(3));
  auto g = transvection(Letter::pos(3), Letter::pos(1));
  RelatorInstance r;
  r.left(Term::of(f));
  r.left(Term::of(g));
  auto p = rc.product(r.lhs, r.nl);
  Word w{Letter::pos(3)};
  EXPECT_EQ(apply(ctx, p, w), apply(ctx, f, apply(ctx, g, w)));
}
