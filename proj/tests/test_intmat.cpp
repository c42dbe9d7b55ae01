#include <gtest/gtest.h>

#include <random>

#include "raagtree/intmat.hpp"

using namespace raagtree;

namespace {

mpz_class det(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  mpq_class d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) std::swap(a[p], a[c]), d = -d;
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      mpq_class f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d.get_num();
}

SmallRow sparse(const std::vector<long>& dense) {
  SmallRow r;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i]) r.emplace_back(static_cast<int>(i), dense[i]);
  return r;
}

}  // namespace

TEST(Lattice, DiagonalExample) {
  SparseLattice L(2);
  EXPECT_TRUE(L.insert(to_sparse(sparse({2, 0}))));
  EXPECT_TRUE(L.insert(to_sparse(sparse({0, 3}))));
  EXPECT_EQ(L.torsion(), std::vector<mpz_class>{6});
  EXPECT_FALSE(L.insert(to_sparse(sparse({4, 3}))));
}

TEST(Lattice, GcdInsertion) {
  SparseLattice L(1);
  L.insert({{0, mpz_class(4)}});
  L.insert({{0, mpz_class(6)}});
  EXPECT_EQ(L.rank(), 1u);
  EXPECT_EQ(L.torsion(), std::vector<mpz_class>{2});
  EXPECT_THROW(L.insert({{1, mpz_class(1)}}), Error);
}

TEST(Lattice, RandomSquareMatricesDeterminant) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> d(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<std::vector<mpq_class>> q(n, std::vector<mpq_class>(n));
    std::vector<SmallRow> rows;
    SparseLattice L(n);
    for (int i = 0; i < n; ++i) {
      std::vector<long> row(n);
      for (int j = 0; j < n; ++j) q[i][j] = row[j] = d(rng);
      rows.push_back(sparse(row));
      L.insert(to_sparse(rows.back()));
    }
    mpz_class D = abs(det(q));
    EXPECT_EQ(rank_mod_p(rows, n, 1000000007ULL) == static_cast<std::size_t>(n), D % 1000000007 != 0);
    if (D == 0) {
      EXPECT_LT(L.rank(), static_cast<std::size_t>(n));
      continue;
    }
    ASSERT_EQ(L.rank(), static_cast<std::size_t>(n));
    mpz_class prod = 1;
    auto tors = L.torsion();
    for (auto& x : tors) prod *= x;
    EXPECT_EQ(prod, D);
    for (std::size_t i = 1; i < tors.size(); ++i) EXPECT_EQ(tors[i] % tors[i - 1], 0);
  }
}

TEST(Lattice, TorsionMatchesDenseSmithForm) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 6, n = 1 + (trial / 6) % 5;
    std::vector<std::vector<mpz_class>> dense(m, std::vector<mpz_class>(n));
    SparseLattice L(n);
    std::vector<SmallRow> rows;
    for (int i = 0; i < m; ++i) {
      std::vector<long> row(n);
      for (int j = 0; j < n; ++j) dense[i][j] = row[j] = d(rng) * (trial % 3 == 0 ? 2 : 1);
      rows.push_back(sparse(row));
      L.insert(to_sparse(rows.back()));
    }
    std::vector<mpz_class> expected;
    std::size_t rank = 0;
    for (auto& x : SparseLattice::smith_diagonal(dense)) {
      ++rank;
      if (abs(x) > 1) expected.push_back(abs(x));
    }
    EXPECT_EQ(L.rank(), rank);
    EXPECT_EQ(L.torsion(), expected);
    for (auto& r : rows) EXPECT_TRUE(L.in_rational_span(to_sparse(r)));
  }
}

TEST(Lattice, RationalSpan) {
  SparseLattice L(3);
  L.insert(to_sparse(sparse({2, 2, 0})));
  EXPECT_TRUE(L.in_rational_span(to_sparse(sparse({1, 1, 0}))));
  EXPECT_FALSE(L.in_rational_span(to_sparse(sparse({1, 0, 0}))));
  EXPECT_TRUE(L.in_rational_span({}));
}

TEST(RankModP, LargePrimes) {
  std::vector<SmallRow> rows{sparse({1, 2, 3}), sparse({2, 4, 6}), sparse({0, 1, -1})};
  EXPECT_EQ(rank_mod_p(rows, 3, 4611686018427387847ULL), 2u);
  EXPECT_EQ(rank_mod_p({sparse({2, 0}), sparse({0, 2})}, 2, 2), 0u);
}
