#pragma once

#include <gmpxx.h>

#include <vector>

#include "raagtree/budget.hpp"
#include "raagtree/error.hpp"
#include "raagtree/series.hpp"

namespace raagtree {

/// Exponential generating function stored by its labelled counts
/// a_n = n! coef_n. Products become binomial convolutions, so everything
/// stays in integers; this is the fast route for high-order statistics.
class LabelledCounts {
 public:
  explicit LabelledCounts(int order = 0) : a_(order + 1) {}

  int order() const noexcept { return static_cast<int>(a_.size()) - 1; }
  const mpz_class& operator[](int n) const { return a_.at(n); }
  mpz_class& operator[](int n) { return a_.at(n); }

  static LabelledCounts cayley_T(int order) {
    LabelledCounts t(order);
    for (int n = 1; n <= order; ++n) t[n] = power(n, n - 1);
    return t;
  }

  static LabelledCounts z(int order) {
    LabelledCounts s(order);
    if (order >= 1) s[1] = 1;
    return s;
  }

  static LabelledCounts one(int order) {
    LabelledCounts s(order);
    s[0] = 1;
    return s;
  }

  friend LabelledCounts operator+(LabelledCounts a, const LabelledCounts& b) {
    for (int n = 0; n <= a.order(); ++n) a[n] += b[n];
    return a;
  }
  friend LabelledCounts operator-(LabelledCounts a, const LabelledCounts& b) {
    for (int n = 0; n <= a.order(); ++n) a[n] -= b[n];
    return a;
  }

  friend LabelledCounts operator*(const LabelledCounts& a, const LabelledCounts& b) {
    const int order = a.order();
    const auto& binom = binomials(order);
    LabelledCounts r(order);
    mpz_class term;
    for (int n = 0; n <= order; ++n) {
      for (int k = 0; k <= n; ++k) {
        if (sgn(a[k]) == 0 || sgn(b[n - k]) == 0) continue;
        term = a[k] * b[n - k];
        r[n] += term * binom[n][k];
      }
    }
    return r;
  }

  /// z * f: (n! coef_n) = n * (n-1)! coef_{n-1}.
  LabelledCounts times_z() const {
    LabelledCounts r(order());
    for (int n = 1; n <= order(); ++n) r[n] = a_[n - 1] * n;
    return r;
  }

  TruncatedSeries to_series() const {
    TruncatedSeries s(order());
    for (int n = 0; n <= order(); ++n) {
      s[n] = mpq_class(a_[n], factorial(n));
      s[n].canonicalize();
    }
    return s;
  }

  static const std::vector<std::vector<mpz_class>>& binomials(int order) {
    static thread_local std::vector<std::vector<mpz_class>> table;
    while (static_cast<int>(table.size()) <= order) {
      int n = static_cast<int>(table.size());
      std::vector<mpz_class> row(n + 1);
      row[0] = row[n] = 1;
      for (int k = 1; k < n; ++k) row[k] = table[n - 1][k - 1] + table[n - 1][k];
      table.push_back(std::move(row));
    }
    return table;
  }

 private:
  std::vector<mpz_class> a_;
};

/// exp of an EGF with a_0 = 0: e_n = sum_k C(n-1, k-1) a_k e_{n-k}.
inline LabelledCounts exp(const LabelledCounts& a) {
  if (sgn(a[0]) != 0) throw Error(ErrorKind::NonzeroConstantTerm, "exp needs a(0) = 0");
  const int order = a.order();
  const auto& binom = LabelledCounts::binomials(order);
  LabelledCounts e(order);
  e[0] = 1;
  mpz_class term;
  for (int n = 1; n <= order; ++n) {
    for (int k = 1; k <= n; ++k) {
      if (sgn(a[k]) == 0) continue;
      term = a[k] * e[n - k];
      e[n] += term * binom[n - 1][k - 1];
    }
  }
  return e;
}

inline LabelledCounts psi_counts(int k, int order) {
  auto s = LabelledCounts::cayley_T(order);
  for (int i = 1; i <= k; ++i) s = (exp(s) - LabelledCounts::one(order)).times_z();
  return s;
}

inline LabelledCounts phi_counts(int k, int order) {
  auto s = LabelledCounts::z(order);
  for (int i = 1; i <= k; ++i) s = exp(s).times_z();
  return s;
}

inline void check_series_budget(int n, int max_order) {
  if (n < 1) throw Error(ErrorKind::BadLabel, "n must be positive");
  if (n > max_order)
    throw Error(ErrorKind::TooLarge, "n=" + std::to_string(n) + " exceeds series budget " + std::to_string(max_order));
}

/// Labelled counts behind the root and node statistics, all up to one order.
///
///   root_deep       n! coef_n Psi_3: rooted trees, root >= 3 from every childless node
///   second_gen      n! coef_n W, W = z^2 (T-z) e^{T-z} e^{z(e^{T-z}-1)}: sum of Y
///   node_deep       Psi_3 - z Psi_2: the same without roots of degree one,
///                   i.e. pairs (tree, deep node)
///   node_second_gen z^2 (T-z) e^{T-z} (e^{z(e^{T-z}-1)} - 1): sum of Upsilon
struct RootStatisticsTable {
  int order = 0;
  LabelledCounts root_deep;
  LabelledCounts second_gen;
  LabelledCounts node_deep;
  LabelledCounts node_second_gen;

  explicit RootStatisticsTable(int order_, int max_order = Budget::from_environment().series_max_order) : order(order_) {
    check_series_budget(order_, max_order);
    auto one = LabelledCounts::one(order);
    auto tz = LabelledCounts::cayley_T(order) - LabelledCounts::z(order);
    auto e1 = exp(tz);
    auto psi2 = (e1 - one).times_z();
    auto e2 = exp(psi2);
    root_deep = (e2 - one).times_z();
    node_deep = root_deep - psi2.times_z();
    auto tz_e1 = tz * e1;
    second_gen = (tz_e1 * e2).times_z().times_z();
    node_second_gen = (tz_e1 * (e2 - one)).times_z().times_z();
  }

  mpz_class rooted_total(int n) const { return power(n, n - 1); }

  mpq_class prob_root_deep(int n) const { return ratio(root_deep[n], rooted_total(n)); }
  mpq_class mean_Y(int n) const { return ratio(second_gen[n], rooted_total(n)); }
  mpq_class mean_N_given_deep(int n) const {
    if (sgn(root_deep[n]) == 0) throw Error(ErrorKind::DivByZero, "no deep root at n=" + std::to_string(n));
    return ratio(second_gen[n], root_deep[n]);
  }
  /// E'|D(T)| / n over unrooted trees.
  mpq_class deep_fraction(int n) const { return ratio(node_deep[n], rooted_total(n)); }
  /// E' Upsilon(T) / n over unrooted trees.
  mpq_class upsilon_per_node(int n) const { return ratio(node_second_gen[n], rooted_total(n)); }

 private:
  static mpq_class ratio(const mpz_class& a, const mpz_class& b) {
    mpq_class q(a, b);
    q.canonicalize();
    return q;
  }
};

inline mpq_class exact_prob_root_deep(int n) { return RootStatisticsTable(n).prob_root_deep(n); }
inline mpq_class exact_mean_Y(int n) { return RootStatisticsTable(n).mean_Y(n); }
inline mpq_class exact_mean_N_given_deep(int n) { return RootStatisticsTable(n).mean_N_given_deep(n); }
inline mpq_class exact_deep_fraction(int n) { return RootStatisticsTable(n).deep_fraction(n); }
inline mpq_class exact_upsilon_per_node(int n) { return RootStatisticsTable(n).upsilon_per_node(n); }

}  // namespace raagtree
