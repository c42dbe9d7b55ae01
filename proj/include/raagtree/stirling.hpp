#pragma once

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

#include "raagtree/error.hpp"
#include "raagtree/series.hpp"

namespace raagtree {

/// Stirling numbers of the second kind from S(n,k) = k S(n-1,k) + S(n-1,k-1).
class StirlingTable {
 public:
  StirlingTable(int max_n, int max_k) : max_n_(max_n), max_k_(max_k), s_((max_n + 1) * (max_k + 1)) {
    at(0, 0) = 1;
    for (int n = 1; n <= max_n; ++n)
      for (int k = 1; k <= std::min(n, max_k); ++k) at(n, k) = at(n - 1, k) * k + at(n - 1, k - 1);
  }

  int max_n() const { return max_n_; }
  int max_k() const { return max_k_; }

  const mpz_class& operator()(int n, int k) const {
    if (n < 0 || k < 0 || n > max_n_ || k > max_k_) throw Error(ErrorKind::TooLarge, "Stirling index outside table");
    return s_[n * (max_k_ + 1) + k];
  }

 private:
  mpz_class& at(int n, int k) { return s_[n * (max_k_ + 1) + k]; }

  int max_n_, max_k_;
  std::vector<mpz_class> s_;
};

/// Series in x whose coefficients are polynomials in y, truncated at
/// x^order_x and y^order_y.
class BivariateSeries {
 public:
  BivariateSeries(int order_x, int order_y)
      : ox_(order_x), oy_(order_y), c_((order_x + 1) * (order_y + 1)) {}

  int order_x() const { return ox_; }
  int order_y() const { return oy_; }

  mpq_class& operator()(int i, int j) { return c_.at(i * (oy_ + 1) + j); }
  const mpq_class& operator()(int i, int j) const { return c_.at(i * (oy_ + 1) + j); }

  /// Lift a univariate series in x, multiplied by y^ydeg.
  static BivariateSeries from_x(const TruncatedSeries& s, int order_y, int ydeg = 0) {
    BivariateSeries b(s.order(), order_y);
    if (ydeg <= order_y)
      for (int i = 0; i <= s.order(); ++i) b(i, ydeg) = s[i];
    return b;
  }

  friend BivariateSeries operator+(BivariateSeries a, const BivariateSeries& b) {
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }

  friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
    BivariateSeries r(a.ox_, a.oy_);
    for (int i1 = 0; i1 <= a.ox_; ++i1)
      for (int j1 = 0; j1 <= a.oy_; ++j1) {
        if (sgn(a(i1, j1)) == 0) continue;
        for (int i2 = 0; i1 + i2 <= a.ox_; ++i2)
          for (int j2 = 0; j1 + j2 <= a.oy_; ++j2)
            if (sgn(b(i2, j2)) != 0) r(i1 + i2, j1 + j2) += a(i1, j1) * b(i2, j2);
      }
    return r;
  }

  /// exp in x; requires the x^0 coefficient (a polynomial in y) to vanish.
  friend BivariateSeries exp(const BivariateSeries& g) {
    for (int j = 0; j <= g.oy_; ++j)
      if (sgn(g(0, j)) != 0) throw Error(ErrorKind::NonzeroConstantTerm, "bivariate exp needs g(0, y) = 0");
    BivariateSeries f(g.ox_, g.oy_);
    f(0, 0) = 1;
    for (int n = 1; n <= g.ox_; ++n) {
      for (int k = 1; k <= n; ++k)
        for (int j1 = 0; j1 <= g.oy_; ++j1) {
          if (sgn(g(k, j1)) == 0) continue;
          for (int j2 = 0; j1 + j2 <= g.oy_; ++j2)
            if (sgn(f(n - k, j2)) != 0) f(n, j1 + j2) += g(k, j1) * f(n - k, j2) * k;
        }
      for (int j = 0; j <= g.oy_; ++j) f(n, j) /= n;
    }
    return f;
  }

  BivariateSeries truncated_x(int order_x) const {
    BivariateSeries r(order_x, oy_);
    for (int i = 0; i <= order_x; ++i)
      for (int j = 0; j <= oy_; ++j) r(i, j) = (*this)(i, j);
    return r;
  }

  friend bool operator==(const BivariateSeries& a, const BivariateSeries& b) {
    return a.ox_ == b.ox_ && a.oy_ == b.oy_ && a.c_ == b.c_;
  }

 private:
  int ox_, oy_;
  std::vector<mpq_class> c_;
};

/// Sum over compositions q_1 + ... + q_k = n (q_i >= 1) of n! / (q_1! ... q_k!).
inline mpz_class composition_multinomial_sum(int n, int k) {
  std::vector<mpz_class> fact(n + 1);
  for (int i = 0; i <= n; ++i) fact[i] = factorial(i);
  mpz_class total = 0;
  std::function<void(int, int, mpz_class)> rec = [&](int remaining, int parts, mpz_class denom) {
    if (parts == 0) {
      if (remaining == 0) total += fact[n] / denom;
      return;
    }
    for (int q = 1; q <= remaining - (parts - 1); ++q) rec(remaining - q, parts - 1, denom * fact[q]);
  };
  rec(n, k, 1);
  return total;
}

struct StirlingCheck {
  bool column_egf = false;        // sum_n S(n,k) x^n / n! = (e^x - 1)^k / k!
  bool compositions = false;      // S(n,k)/n! = (1/k!) sum 1/(q_1!...q_k!)
  bool double_sum = false;        // sum S(n,k) x^n/n! y^k = e^{y(e^x - 1)}
  bool first_derivative = false;  // sum S(n,k) x^{n-1}/(n-1)! y^k = y e^x e^{y(e^x-1)}
  bool second_derivative = false; // sum S(n,k) n x^{n-1}/(n-1)! y^k = y e^x e^{y(e^x-1)} (1 + x + x y e^x)

  bool all() const { return column_egf && compositions && double_sum && first_derivative && second_derivative; }
};

inline StirlingCheck stirling_identities(int order) {
  if (order < 1) throw Error(ErrorKind::TooSmall, "Stirling identities need order >= 1");
  const int m = order;
  StirlingTable S(m + 1, m + 1);
  StirlingCheck out;

  auto x = TruncatedSeries::z(m);
  auto ex_minus_1 = exp(x) - TruncatedSeries::constant(1, m);

  out.column_egf = true;
  for (int k = 1; k <= m; ++k) {
    TruncatedSeries lhs(m);
    for (int n = 0; n <= m; ++n) lhs[n] = mpq_class(S(n, k), factorial(n)), lhs[n].canonicalize();
    auto rhs = ex_minus_1.pow(k) * mpq_class(1, factorial(k));
    if (!(lhs == rhs)) out.column_egf = false;
  }

  out.compositions = true;
  for (int n = 1; n <= m; ++n)
    for (int k = 1; k <= n; ++k)
      if (composition_multinomial_sum(n, k) != S(n, k) * factorial(k)) out.compositions = false;

  // y (e^x - 1) and its exponential
  auto g = BivariateSeries::from_x(ex_minus_1, m, 1);
  auto F = exp(g);
  BivariateSeries lhs3(m, m);
  for (int n = 0; n <= m; ++n)
    for (int k = 0; k <= m; ++k) lhs3(n, k) = mpq_class(S(n, k), factorial(n)), lhs3(n, k).canonicalize();
  out.double_sum = (lhs3 == F);

  const int m1 = m - 1;
  auto y_ex = BivariateSeries::from_x(exp(x), m, 1);
  auto rhs4 = (y_ex * F).truncated_x(m1);
  BivariateSeries lhs4(m1, m);
  BivariateSeries lhs5(m1, m);
  for (int i = 0; i <= m1; ++i)
    for (int k = 0; k <= m; ++k) {
      lhs4(i, k) = mpq_class(S(i + 1, k), factorial(i));
      lhs4(i, k).canonicalize();
      lhs5(i, k) = lhs4(i, k) * (i + 1);
    }
  out.first_derivative = (lhs4 == rhs4);

  auto one_plus_x = BivariateSeries::from_x(TruncatedSeries::constant(1, m) + x, m);
  auto xy_ex = BivariateSeries::from_x(exp(x).shifted(1), m, 1);
  auto rhs5 = (y_ex * F * (one_plus_x + xy_ex)).truncated_x(m1);
  out.second_derivative = (lhs5 == rhs5);
  return out;
}

}  // namespace raagtree
