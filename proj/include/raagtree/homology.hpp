#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "raagtree/budget.hpp"
#include "raagtree/error.hpp"
#include "raagtree/intmat.hpp"
#include "raagtree/relators.hpp"
#include "raagtree/whitehead.hpp"

namespace raagtree {

enum class Verify {
  None,
  /// The first instance behind every distinct row, plus the first
  /// `sample_per_schema` instances of each family.
  Representatives,
  All,
};

struct PresentationOptions {
  Verify verify = Verify::Representatives;
  std::uint64_t sample_per_schema = 2000;
  int max_nodes = Budget::from_environment().presentation_max_n;
  std::size_t max_generators = Budget::from_environment().max_generators;
};

struct SchemaTally {
  std::uint64_t instances = 0;
  std::uint64_t invalid = 0;
  std::uint64_t zero_rows = 0;
  std::uint64_t distinct_rows = 0;
  std::uint64_t verified = 0;
  std::uint64_t failures = 0;
};

struct RowHash {
  std::size_t operator()(const SmallRow& r) const noexcept {
    std::size_t h = r.size();
    for (auto& [c, v] : r) h = h * 1000003u ^ (static_cast<std::size_t>(c) * 31u + static_cast<std::size_t>(v));
    return h;
  }
};

/// Generators and abelianized relators of Aut*(A_T).
///
/// Columns: the non-identity type (2) pairs in canonical form (pairs over
/// lk(a) dropped), then the Coxeter generators of the type (1) part. Rows
/// are deduplicated up to sign; a row and its negative give the same lattice.
struct Presentation {
  int n = 0;
  std::size_t raw_type2 = 0;
  std::vector<Whitehead2> type2;
  std::vector<TypeOneGroup::Generator> type1;
  std::vector<int> sym1_columns;  // graphic generators among the type (1) columns
  std::map<Schema, SchemaTally> tally;
  std::vector<SmallRow> rows;
  std::vector<Schema> row_schema;
  std::vector<std::string> failure_samples;

  std::size_t columns() const { return type2.size() + type1.size(); }
  int column(const Whitehead2& canonical_form) const {
    auto it = index.find(canonical_form);
    return it == index.end() ? -1 : it->second;
  }
  std::uint64_t instances() const {
    std::uint64_t c = 0;
    for (auto& [s, t] : tally) c += t.instances;
    return c;
  }
  std::uint64_t failures() const {
    std::uint64_t c = 0;
    for (auto& [s, t] : tally) c += t.failures;
    return c;
  }

  std::unordered_map<Whitehead2, int, Whitehead2Hash> index;
};

inline void check_presentation_budget(int n, int max_nodes) {
  if (n < 2) throw Error(ErrorKind::TooSmall, "presentation needs n >= 2");
  if (n > max_nodes)
    throw Error(ErrorKind::TooLarge,
                "n=" + std::to_string(n) + " exceeds presentation budget " + std::to_string(max_nodes));
}

inline Presentation build_presentation(const LabeledTree& t, const PresentationOptions& opt = {}) {
  check_presentation_budget(t.size(), opt.max_nodes);
  RelatorContext rc(t, opt.max_generators);
  const AutContext& ctx = rc.context();
  Presentation P;
  P.n = t.size();
  P.raw_type2 = rc.raw().size();
  P.type2 = enumerate_type2(ctx, Forms::Canonical, opt.max_generators);
  for (std::size_t i = 0; i < P.type2.size(); ++i) P.index.emplace(P.type2[i], static_cast<int>(i));
  P.type1 = rc.group().generators();
  for (int id : rc.group().sym1_generator_ids()) P.sym1_columns.push_back(static_cast<int>(P.type2.size()) + id);
  const int offset = static_cast<int>(P.type2.size());

  std::unordered_set<SmallRow, RowHash> seen;
  std::map<int, long> acc;
  auto add_term = [&](const Term& term, long sign) {
    if (term.type1) {
      for (int g : rc.type1_word(term.id)) acc[offset + g] += sign;
      return;
    }
    Whitehead2 c = canonical(ctx, term.w);
    if (c.set == bit(c.a)) return;
    int col = P.column(c);
    if (col < 0) throw Error(ErrorKind::MalformedPair, "relator term outside the generating set: " + to_string(c));
    acc[col] += sign;
  };

  auto counts = for_each_relator(rc, kEverySchema, [&](const RelatorInstance& r) {
    auto& tl = P.tally[r.schema];
    acc.clear();
    for (int i = 0; i < r.nl; ++i) add_term(r.lhs[i], 1);
    for (int i = 0; i < r.nr; ++i) add_term(r.rhs[i], -1);
    SmallRow row;
    for (auto& [c, v] : acc)
      if (v != 0) row.emplace_back(c, v);
    if (!row.empty() && row.front().second < 0)
      for (auto& e : row) e.second = -e.second;
    bool fresh = false;
    if (row.empty()) {
      ++tl.zero_rows;
    } else if (seen.insert(row).second) {
      fresh = true;
      ++tl.distinct_rows;
    }
    bool check = opt.verify == Verify::All ||
                 (opt.verify == Verify::Representatives && (fresh || tl.verified < opt.sample_per_schema));
    bool ok = true;
    if (check) {
      ++tl.verified;
      ok = rc.holds(r);
      if (!ok) {
        ++tl.failures;
        if (P.failure_samples.size() < 5) P.failure_samples.push_back(describe(rc, r));
      }
    }
    if (fresh) {
      if (ok) {
        P.rows.push_back(std::move(row));
        P.row_schema.push_back(r.schema);
      } else {
        seen.erase(row);
        --tl.distinct_rows;
      }
    }
  });
  for (Schema s : kAllSchemas) {
    P.tally[s].instances = counts.instances[s];
    P.tally[s].invalid = counts.invalid[s];
  }
  return P;
}

/// "rows cols" followed by "row col value" triplets (0-based).
inline void write_matrix(std::ostream& out, const Presentation& P) {
  out << P.rows.size() << " " << P.columns() << "\n";
  for (std::size_t i = 0; i < P.rows.size(); ++i)
    for (auto& [c, v] : P.rows[i]) out << i << " " << c << " " << v << "\n";
}

struct H1Result {
  int n = 0;
  std::size_t generators = 0;
  std::size_t type2_generators = 0;
  std::size_t type1_generators = 0;
  std::uint64_t relator_instances = 0;
  std::size_t distinct_rows = 0;
  std::size_t rank = 0;
  long b1 = 0;
  std::vector<mpz_class> torsion;
  /// Rank agrees modulo two large primes.
  bool rank_cross_checked = false;
  std::uint64_t failures = 0;
};

inline SparseLattice relator_lattice(const Presentation& P) {
  SparseLattice L(static_cast<int>(P.columns()));
  for (auto& r : P.rows) L.insert(to_sparse(r));
  return L;
}

inline constexpr std::uint64_t kPrimeA = 4611686018427387847ULL;  // 2^62 - 57
inline constexpr std::uint64_t kPrimeB = 2305843009213693951ULL;  // 2^61 - 1

inline H1Result betti_one(const Presentation& P, const SparseLattice& L) {
  H1Result h;
  h.n = P.n;
  h.generators = P.columns();
  h.type2_generators = P.type2.size();
  h.type1_generators = P.type1.size();
  h.relator_instances = P.instances();
  h.distinct_rows = P.rows.size();
  h.rank = L.rank();
  h.b1 = static_cast<long>(h.generators) - static_cast<long>(h.rank);
  h.torsion = L.torsion();
  const int cols = static_cast<int>(P.columns());
  h.rank_cross_checked = rank_mod_p(P.rows, cols, kPrimeA) == h.rank && rank_mod_p(P.rows, cols, kPrimeB) == h.rank;
  h.failures = P.failures();
  return h;
}

inline H1Result betti_one(const LabeledTree& t, const PresentationOptions& opt = {}) {
  auto P = build_presentation(t, opt);
  auto L = relator_lattice(P);
  return betti_one(P, L);
}

struct BettiBoundReport {
  H1Result h1;
  std::int64_t upsilon = 0;
  std::size_t omega_size = 0;
  bool phi_kills_relators = true;
  /// rank(relators ∪ Ω) - rank(relators) = |Ω|.
  bool omega_independent = true;
  bool bound_holds() const { return h1.b1 >= upsilon; }
  bool ok() const {
    return bound_holds() && phi_kills_relators && omega_independent && omega_size == static_cast<std::size_t>(upsilon) &&
           h1.rank_cross_checked && h1.failures == 0;
  }
};

inline BettiBoundReport check_betti_bound(const LabeledTree& t, const PresentationOptions& opt = {}) {
  auto P = build_presentation(t, opt);
  auto L = relator_lattice(P);
  BettiBoundReport rep;
  rep.h1 = betti_one(P, L);
  rep.upsilon = boundary_profile(t).upsilon;
  AutContext ctx(t);
  auto om = omega(ctx);
  rep.omega_size = om.size();
  if (om.empty()) return rep;

  std::vector<std::vector<long>> phi_col(P.type2.size());
  for (std::size_t c = 0; c < P.type2.size(); ++c) phi_col[c] = phi(ctx, om, P.type2[c]);
  for (auto& row : P.rows) {
    std::vector<long> s(om.size(), 0);
    for (auto& [c, v] : row)
      if (c < static_cast<int>(P.type2.size()))
        for (std::size_t k = 0; k < om.size(); ++k) s[k] += v * phi_col[c][k];
    for (long x : s)
      if (x != 0) rep.phi_kills_relators = false;
  }

  SparseLattice extended = L;
  std::size_t grown = 0;
  for (auto& e : om) {
    int col = P.column({e.pairs | bit(Letter::pos(e.a)), Letter::pos(e.a)});
    if (col < 0) throw Error(ErrorKind::MalformedPair, "deep partial conjugation missing from generators");
    if (extended.insert({{col, mpz_class(1)}})) ++grown;
  }
  rep.omega_independent = grown == om.size();
  return rep;
}

struct VanishingReport {
  std::size_t eligible = 0;
  std::size_t vanishing = 0;
  std::vector<std::string> survivors;
  bool ok() const { return eligible == vanishing; }
};

/// Elements with trivial image: transvections τ_da onto a leaf a that shares
/// a neighbour with two other leaves b, d, or with d adjacent to a and a leaf
/// b ≠ d adjacent to a; partial conjugations c_{Y,a} by a leaf a that shares
/// its neighbour with another leaf.
inline std::vector<Whitehead2> vanishing_candidates(const AutContext& ctx) {
  const LabeledTree& t = ctx.tree();
  const int n = t.size();
  std::vector<Whitehead2> out;
  auto leaf_sharing = [&](int a, int exclude) {
    if (!t.is_leaf(a)) return false;
    int u = t.neighbors(a)[0];
    for (int b : t.neighbors(u))
      if (b != a && b != exclude && t.is_leaf(b)) return true;
    return false;
  };
  for (int a = 1; a <= n; ++a)
    for (int d = 1; d <= n; ++d) {
      if (a == d || !ctx.leq(d, a)) continue;
      bool first = t.is_leaf(a) && t.is_leaf(d) && t.neighbors(a)[0] == t.neighbors(d)[0] && leaf_sharing(a, d);
      bool second = false;
      if (t.adjacent(a, d))
        for (int b : t.neighbors(a))
          if (b != d && t.is_leaf(b)) second = true;
      if (first || second) out.push_back(transvection(Letter::pos(d), Letter::pos(a)));
    }
  for (int a = 1; a <= n; ++a)
    if (leaf_sharing(a, 0))
      for (std::size_t i = 0; i < ctx.components(a).size(); ++i) out.push_back(partial_conjugation(ctx, Letter::pos(a), i));
  return out;
}

inline VanishingReport check_vanishing_lemma(const Presentation& P, const SparseLattice& L, const LabeledTree& t) {
  AutContext ctx(t);
  VanishingReport rep;
  for (const auto& w : vanishing_candidates(ctx)) {
    ++rep.eligible;
    int col = P.column(canonical(ctx, w));
    if (col < 0) throw Error(ErrorKind::MalformedPair, "candidate outside the generating set");
    if (L.in_rational_span({{col, mpz_class(1)}}))
      ++rep.vanishing;
    else
      rep.survivors.push_back(to_string(w));
  }
  return rep;
}

inline VanishingReport check_vanishing_lemma(const LabeledTree& t, const PresentationOptions& opt = {}) {
  auto P = build_presentation(t, opt);
  auto L = relator_lattice(P);
  return check_vanishing_lemma(P, L, t);
}

/// Every node is a leaf or has at least three leaf neighbours.
inline bool in_vanishing_class(const LabeledTree& t) {
  for (int v = 1; v <= t.size(); ++v) {
    if (t.is_leaf(v)) continue;
    int leaves = 0;
    for (int w : t.neighbors(v)) leaves += t.is_leaf(w) ? 1 : 0;
    if (leaves < 3) return false;
  }
  return true;
}

}  // namespace raagtree
