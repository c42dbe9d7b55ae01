#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "raagtree/error.hpp"

namespace raagtree {

/// Power series c_0 + c_1 z + ... + c_order z^order with exact rational
/// coefficients. Binary operations truncate to the smaller order.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order = 0) : c_(std::max(order, 0) + 1) {}
  explicit TruncatedSeries(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.resize(1);
  }

  static TruncatedSeries constant(const mpq_class& value, int order) {
    TruncatedSeries s(order);
    s.c_[0] = value;
    return s;
  }

  /// coef * z^k, truncated.
  static TruncatedSeries monomial(int k, int order, const mpq_class& coef = 1) {
    TruncatedSeries s(order);
    if (k <= order) s.c_[k] = coef;
    return s;
  }

  static TruncatedSeries z(int order) { return monomial(1, order); }

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }

  /// Coefficient of z^k; zero past the truncation order is not implied, so
  /// asking for it is an error.
  const mpq_class& operator[](int k) const { return c_.at(k); }
  mpq_class& operator[](int k) { return c_.at(k); }
  const std::vector<mpq_class>& coefficients() const noexcept { return c_; }

  TruncatedSeries truncated(int order) const {
    TruncatedSeries s(std::min(order, this->order()));
    std::copy_n(c_.begin(), s.c_.size(), s.c_.begin());
    return s;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    shrink_to(o.order());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    shrink_to(o.order());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  TruncatedSeries& operator*=(const mpq_class& k) {
    for (auto& x : c_) x *= k;
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(TruncatedSeries a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend TruncatedSeries operator*(TruncatedSeries a, const mpq_class& k) { return a *= k; }
  friend TruncatedSeries operator*(const mpq_class& k, TruncatedSeries a) { return a *= k; }

  /// Schoolbook product.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int order = std::min(a.order(), b.order());
    TruncatedSeries r(order);
    mpq_class term;
    for (int i = 0; i <= order; ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (int j = 0; i + j <= order; ++j) {
        if (sgn(b.c_[j]) == 0) continue;
        term = a.c_[i] * b.c_[j];
        r.c_[i + j] += term;
      }
    }
    return r;
  }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  /// z^k * this, keeping the order.
  TruncatedSeries shifted(int k) const {
    TruncatedSeries r(order());
    for (int i = 0; i + k <= order(); ++i) r.c_[i + k] = c_[i];
    return r;
  }

  /// Formal derivative; the order drops by one (never below zero).
  TruncatedSeries derivative() const {
    TruncatedSeries r(std::max(order() - 1, 0));
    for (int i = 1; i <= order(); ++i) r.c_[i - 1] = c_[i] * i;
    return r;
  }

  TruncatedSeries pow(int k) const {
    auto r = constant(1, order());
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i <= order(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      if (!out.empty()) out += " + ";
      out += c_[i].get_str();
      if (i > 0) out += "*z^" + std::to_string(i);
    }
    return out.empty() ? "0" : out + " + O(z^" + std::to_string(order() + 1) + ")";
  }

 private:
  void shrink_to(int order) {
    if (order < this->order()) c_.resize(order + 1);
  }

  std::vector<mpq_class> c_;
};

/// exp(a) for a with zero constant term, from n E_n = sum_k k a_k E_{n-k}.
inline TruncatedSeries exp(const TruncatedSeries& a) {
  if (sgn(a[0]) != 0) throw Error(ErrorKind::NonzeroConstantTerm, "exp needs a(0) = 0 to stay rational");
  const int order = a.order();
  TruncatedSeries e(order);
  e[0] = 1;
  std::vector<mpq_class> ka(order + 1);
  for (int k = 1; k <= order; ++k) ka[k] = a[k] * k;
  mpq_class acc;
  for (int n = 1; n <= order; ++n) {
    acc = 0;
    for (int k = 1; k <= n; ++k)
      if (sgn(ka[k]) != 0) acc += ka[k] * e[n - k];
    e[n] = acc / n;
  }
  return e;
}

/// g(h(z)) by Horner's rule; h must have zero constant term.
inline TruncatedSeries compose(const TruncatedSeries& g, const TruncatedSeries& h) {
  if (sgn(h[0]) != 0) throw Error(ErrorKind::NonzeroConstantTerm, "compose needs h(0) = 0");
  const int order = std::min(g.order(), h.order());
  auto r = TruncatedSeries::constant(g[g.order()], order);
  for (int k = g.order() - 1; k >= 0; --k) {
    r = r * h;
    r[0] += g[k];
  }
  return r;
}

inline mpz_class factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

inline mpz_class power(long base, int exp) {
  mpz_class r;
  mpz_class b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp));
  return r;
}

/// Cayley's tree function from the closed form t_n / n! = n^(n-1) / n!.
inline TruncatedSeries cayley_T(int order) {
  TruncatedSeries t(order);
  for (int n = 1; n <= order; ++n) {
    t[n] = mpq_class(power(n, n - 1), factorial(n));
    t[n].canonicalize();
  }
  return t;
}

/// Solution of T = z exp(T) by fixed-point iteration; each pass fixes one
/// more coefficient.
inline TruncatedSeries cayley_T_fixed_point(int order) {
  TruncatedSeries t(order);
  for (int i = 0; i < order; ++i) t = exp(t).shifted(1);
  return t;
}

/// Unrooted trees: u_n / n! = n^(n-2) / n!, u_1 = 1.
inline TruncatedSeries cayley_U(int order) {
  TruncatedSeries u(order);
  if (order >= 1) u[1] = 1;
  for (int n = 2; n <= order; ++n) {
    u[n] = mpq_class(power(n, n - 2), factorial(n));
    u[n].canonicalize();
  }
  return u;
}

/// coef_n[g(h)] where h = z f(h), through coef_{n-1}[g'(z) f(z)^n / n].
inline mpq_class lagrange_coef(const TruncatedSeries& g, const TruncatedSeries& f, int n) {
  if (sgn(f[0]) == 0) throw Error(ErrorKind::BadF, "Lagrange inversion needs f(0) != 0");
  if (n < 1) throw Error(ErrorKind::BadLabel, "Lagrange inversion needs n >= 1");
  const int order = n - 1;
  if (g.order() < n || f.order() < order) throw Error(ErrorKind::TooSmall, "series truncated below the requested coefficient");
  auto fn = f.truncated(order).pow(n);
  auto prod = g.derivative().truncated(order) * fn;
  mpq_class r = prod[order] / n;
  r.canonicalize();
  return r;
}

/// coef_n[T^k] = (k/n) n^(n-k) / (n-k)!, for 1 <= k <= n.
inline mpq_class cayley_power_coef(int n, int k) {
  if (k < 1 || k > n) return 0;
  mpq_class r(mpz_class(k) * power(n, n - k), mpz_class(n) * factorial(n - k));
  r.canonicalize();
  return r;
}

/// Psi_0 = T, Psi_k = z (exp(Psi_{k-1}) - 1): rooted trees whose root is at
/// distance >= k from every childless node.
inline TruncatedSeries psi(int k, int order) {
  auto s = cayley_T(order);
  auto one = TruncatedSeries::constant(1, order);
  for (int i = 1; i <= k; ++i) s = (exp(s) - one).shifted(1);
  return s;
}

/// Phi_0 = z, Phi_k = z exp(Phi_{k-1}): rooted trees of height <= k.
inline TruncatedSeries phi(int k, int order) {
  auto s = TruncatedSeries::z(order);
  for (int i = 1; i <= k; ++i) s = exp(s).shifted(1);
  return s;
}

/// T e^{-z} - z.
inline TruncatedSeries psi2_closed_form(int order) {
  auto t = cayley_T(order);
  auto e = exp(-TruncatedSeries::z(order));
  return t * e - TruncatedSeries::z(order);
}

/// z e^{T e^{-z}} e^{-z} - z. The inner exponent has constant term 0 since T(0) = 0.
inline TruncatedSeries psi3_closed_form(int order) {
  auto z = TruncatedSeries::z(order);
  auto e = exp(-z);
  auto inner = exp(cayley_T(order) * e);
  return (inner * e).shifted(1) - z;
}

}  // namespace raagtree
