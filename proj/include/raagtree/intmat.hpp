#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "raagtree/error.hpp"

namespace raagtree {

/// Sparse integer row, entries sorted by column, no zeros.
using SparseRow = std::vector<std::pair<int, mpz_class>>;
using SmallRow = std::vector<std::pair<int, long>>;

inline SparseRow to_sparse(const SmallRow& r) {
  SparseRow out;
  out.reserve(r.size());
  for (auto& [c, v] : r)
    if (v != 0) out.emplace_back(c, mpz_class(v));
  return out;
}

/// x a + y b.
inline SparseRow combine(const mpz_class& x, const SparseRow& a, const mpz_class& y, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  mpz_class v;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      v = x * a[i].second;
      if (sgn(v) != 0) out.emplace_back(a[i].first, v);
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      v = y * b[j].second;
      if (sgn(v) != 0) out.emplace_back(b[j].first, v);
      ++j;
    } else {
      v = x * a[i].second + y * b[j].second;
      if (sgn(v) != 0) out.emplace_back(a[i].first, v);
      ++i, ++j;
    }
  }
  return out;
}

inline int cmpabs(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

inline const mpz_class* entry(const SparseRow& r, int col) {
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, int c) { return e.first < c; });
  return (it != r.end() && it->first == col) ? &it->second : nullptr;
}

/// Basis of the row lattice, maintained by unimodular operations only.
/// Pivot k lives in column pivot_col(k) and every later pivot row is zero
/// there, so the basis is triangular in insertion order and the lattice
/// (not only its span) equals the one generated by the inserted rows.
class SparseLattice {
 public:
  explicit SparseLattice(int columns) : cols_(columns), col_pivot_(columns, -1) {}

  int columns() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseRow>& basis() const { return rows_; }
  int pivot_col(std::size_t k) const { return pivot_col_[k]; }

  /// Returns true when the rank grew.
  bool insert(SparseRow r) {
    for (auto& e : r)
      if (e.first < 0 || e.first >= cols_) throw Error(ErrorKind::BadLabel, "column out of range");
    mpz_class g, s, t, pa, ra;
    for (;;) {
      int k = first_pivot_hit(r);
      if (k < 0) break;
      SparseRow& p = rows_[k];
      const int c = pivot_col_[k];
      const mpz_class pv = *entry(p, c);
      const mpz_class rv = *entry(r, c);
      if (mpz_divisible_p(rv.get_mpz_t(), pv.get_mpz_t())) {
        r = combine(1, r, -(rv / pv), p);
      } else {
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pv.get_mpz_t(), rv.get_mpz_t());
        pa = pv / g;
        ra = rv / g;
        SparseRow np = combine(s, p, t, r);
        r = combine(pa, r, -ra, p);
        p = std::move(np);
      }
    }
    if (r.empty()) return false;
    auto best = std::min_element(r.begin(), r.end(), [](const auto& x, const auto& y) {
      return cmpabs(x.second, y.second) < 0;
    });
    col_pivot_[best->first] = static_cast<int>(rows_.size());
    pivot_col_.push_back(best->first);
    rows_.push_back(std::move(r));
    return true;
  }

  /// r lies in the rational span of the lattice.
  bool in_rational_span(SparseRow r) const {
    mpz_class g;
    for (;;) {
      int k = first_pivot_hit(r);
      if (k < 0) break;
      const SparseRow& p = rows_[k];
      const int c = pivot_col_[k];
      const mpz_class& pv = *entry(p, c);
      const mpz_class rv = *entry(r, c);
      mpz_gcd(g.get_mpz_t(), pv.get_mpz_t(), rv.get_mpz_t());
      r = combine(pv / g, r, -(rv / g), p);
      g = 0;
      for (auto& e : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
      if (g > 1)
        for (auto& e : r) e.second /= g;
    }
    return r.empty();
  }

  /// Invariant factors > 1 of Z^columns / lattice. Unit pivots are
  /// eliminated first; the remaining rows go through a dense Smith form.
  std::vector<mpz_class> torsion() const {
    std::vector<char> unit(rows_.size());
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      unit[k] = (cmpabs(*entry(rows_[k], pivot_col_[k]), 1) == 0);
      if (!unit[k]) rest.push_back(k);
    }
    if (rest.empty()) return {};
    std::vector<SparseRow> other;
    for (std::size_t k : rest) other.push_back(rows_[k]);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (!unit[k]) continue;
      const int c = pivot_col_[k];
      const mpz_class& pv = *entry(rows_[k], c);
      for (auto& o : other)
        if (const mpz_class* v = entry(o, c)) o = combine(1, o, -(*v) * pv, rows_[k]);
    }
    std::vector<int> used;
    for (auto& o : other)
      for (auto& e : o) used.push_back(e.first);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    const std::size_t m = other.size(), w = used.size();
    std::vector<std::vector<mpz_class>> a(m, std::vector<mpz_class>(w));
    for (std::size_t i = 0; i < m; ++i)
      for (auto& e : other[i]) a[i][std::lower_bound(used.begin(), used.end(), e.first) - used.begin()] = e.second;
    std::vector<mpz_class> out;
    for (auto& d : smith_diagonal(std::move(a)))
      if (cmpabs(d, 1) > 0) out.push_back(abs(d));
    return out;
  }

  /// Diagonal of the Smith normal form of a dense matrix (nonzero entries only).
  static std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> a) {
    const std::size_t m = a.size(), w = m ? a[0].size() : 0;
    std::vector<mpz_class> diag;
    std::size_t t = 0;
    while (t < m && t < w) {
      // smallest nonzero entry as pivot
      std::size_t pi = m, pj = w;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < w; ++j)
          if (sgn(a[i][j]) != 0 && (pi == m || cmpabs(a[i][j], a[pi][pj]) < 0)) pi = i, pj = j;
      if (pi == m) break;
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
      bool clean = false;
      while (!clean) {
        clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (sgn(a[i][t]) == 0) continue;
          mpz_class q = a[i][t] / a[t][t];
          for (std::size_t j = t; j < w; ++j) a[i][j] -= q * a[t][j];
          if (sgn(a[i][t]) != 0) {
            std::swap(a[t], a[i]);
            clean = false;
          }
        }
        for (std::size_t j = t + 1; j < w; ++j) {
          if (sgn(a[t][j]) == 0) continue;
          mpz_class q = a[t][j] / a[t][t];
          for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
          if (sgn(a[t][j]) != 0) {
            for (auto& row : a) std::swap(row[t], row[j]);
            clean = false;
          }
        }
        if (clean) {
          // divisibility: fold a non-multiple into the pivot row
          for (std::size_t i = t + 1; i < m && clean; ++i)
            for (std::size_t j = t + 1; j < w; ++j)
              if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                for (std::size_t jj = t; jj < w; ++jj) a[t][jj] += a[i][jj];
                clean = false;
                break;
              }
        }
      }
      diag.push_back(a[t][t]);
      ++t;
    }
    return diag;
  }

 private:
  int first_pivot_hit(const SparseRow& r) const {
    int k = -1;
    for (auto& e : r) {
      int p = col_pivot_[e.first];
      if (p >= 0 && (k < 0 || p < k)) k = p;
    }
    return k;
  }

  int cols_;
  std::vector<SparseRow> rows_;
  std::vector<int> pivot_col_;
  std::vector<int> col_pivot_;
};

/// Rank over Z/p by leading-column echelon form; an independent check of
/// the lattice rank (equal unless p divides some invariant factor).
inline std::size_t rank_mod_p(const std::vector<SmallRow>& rows, int columns, std::uint64_t p) {
  using Row = std::vector<std::pair<int, std::uint64_t>>;
  auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
      if (e & 1) r = mulmod(r, a);
    return r;
  };
  std::vector<Row> pivot(columns);
  std::vector<char> has(columns, 0);
  std::size_t rank = 0;
  for (const auto& src : rows) {
    Row r;
    for (auto& [c, v] : src) {
      long m = v % static_cast<long>(p);
      if (m < 0) m += static_cast<long>(p);
      if (m) r.emplace_back(c, static_cast<std::uint64_t>(m));
    }
    while (!r.empty() && has[r.front().first]) {
      const Row& q = pivot[r.front().first];
      const std::uint64_t f = r.front().second;  // q is monic
      Row out;
      std::size_t i = 0, j = 0;
      while (i < r.size() || j < q.size()) {
        if (j == q.size() || (i < r.size() && r[i].first < q[j].first)) {
          out.push_back(r[i++]);
        } else {
          std::uint64_t sub = mulmod(f, q[j].second);
          std::uint64_t base = (i < r.size() && r[i].first == q[j].first) ? r[i++].second : 0;
          std::uint64_t v = (base + p - sub) % p;
          if (v) out.emplace_back(q[j].first, v);
          ++j;
        }
      }
      r = std::move(out);
    }
    if (r.empty()) continue;
    std::uint64_t inv = powmod(r.front().second, p - 2);
    for (auto& e : r) e.second = mulmod(e.second, inv);
    has[r.front().first] = 1;
    pivot[r.front().first] = std::move(r);
    ++rank;
  }
  return rank;
}

}  // namespace raagtree
