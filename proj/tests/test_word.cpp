#include <gtest/gtest.h>

#include <random>

#include "raagtree/word.hpp"

using namespace raagtree;

namespace {

Word random_word(std::mt19937& rng, int n, int len) {
  std::uniform_int_distribution<int> d(0, 2 * n - 1);
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(Letter::from_index(d(rng)));
  return w;
}

}  // namespace

TEST(Letter, ParseAndPrint) {
  EXPECT_EQ(Letter::parse("+3"), Letter::pos(3));
  EXPECT_EQ(Letter::parse("-2"), Letter::neg(2));
  EXPECT_EQ(Letter::pos(4).to_string(), "+4");
  EXPECT_EQ(Letter::neg(4).inverse(), Letter::pos(4));
  EXPECT_THROW(Letter::parse("3"), Error);
  EXPECT_THROW(Letter::parse("+0"), Error);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(Letter::from_index(i).index(), i);
}

TEST(Word, FreeCancellation) {
  auto t = path_tree(3);
  EXPECT_TRUE(normal_form(t, {Letter::pos(1), Letter::neg(1)}).empty());
  // 1 and 3 do not commute, so nothing cancels
  Word w{Letter::pos(1), Letter::pos(3), Letter::neg(1)};
  EXPECT_EQ(normal_form(t, w).size(), 3u);
}

TEST(Word, CancellationAcrossCommutingLetters) {
  auto t = path_tree(3);
  Word w{Letter::pos(1), Letter::pos(2), Letter::neg(1)};
  EXPECT_EQ(normal_form(t, w), Word{Letter::pos(2)});
}

TEST(Word, CommutingLettersSorted) {
  auto t = path_tree(2);
  EXPECT_EQ(normal_form(t, {Letter::pos(2), Letter::pos(1)}), (Word{Letter::pos(1), Letter::pos(2)}));
}

TEST(Word, RejectsForeignLetters) { EXPECT_THROW(normal_form(path_tree(3), {Letter::pos(4)}), Error); }

TEST(Word, NormalFormIsConfluent) {
  std::mt19937 rng(11);
  auto t = LabeledTree::from_edges(6, {{1, 2}, {2, 3}, {2, 4}, {4, 5}, {4, 6}});
  for (int trial = 0; trial < 500; ++trial) {
    Word w = random_word(rng, 6, 12);
    Word base = normal_form(t, w);
    EXPECT_EQ(normal_form(t, base), base);
    // insert a cancelling pair somewhere
    Word v = w;
    std::uniform_int_distribution<std::size_t> pos(0, v.size());
    Letter x = random_word(rng, 6, 1)[0];
    auto at = v.begin() + static_cast<std::ptrdiff_t>(pos(rng));
    at = v.insert(at, x);
    v.insert(at + 1, x.inverse());
    EXPECT_EQ(normal_form(t, v), base);
    // swap a commuting adjacent pair
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (commute(t, w[i], w[i + 1])) {
        Word s = w;
        std::swap(s[i], s[i + 1]);
        EXPECT_EQ(normal_form(t, s), base);
        break;
      }
    // w w^-1 is trivial
    EXPECT_TRUE(normal_form(t, concat(w, inverse(w))).empty());
  }
}

TEST(Word, ReducedLengthIsMinimalUnderRandomRewriting) {
  std::mt19937 rng(3);
  auto t = path_tree(4);
  for (int trial = 0; trial < 300; ++trial) {
    Word w = normal_form(t, random_word(rng, 4, 10));
    Word padded;
    for (Letter x : w) {
      Letter y = random_word(rng, 4, 1)[0];
      padded.push_back(y);
      padded.push_back(y.inverse());
      padded.push_back(x);
    }
    EXPECT_EQ(normal_form(t, padded), w);
  }
}
