#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "raagtree/budget.hpp"
#include "raagtree/error.hpp"
#include "raagtree/whitehead.hpp"

namespace raagtree {

/// Relator families of the presentation of Aut*(A_T). R6 and R7 stand for
/// their restrictions to the type (1) part of Aut*.
enum class Schema : int { R1, R2, R3, R4, R5, R6, R7, R9, R10 };

inline constexpr std::array<Schema, 9> kAllSchemas{Schema::R1, Schema::R2, Schema::R3, Schema::R4, Schema::R5,
                                                   Schema::R6, Schema::R7, Schema::R9, Schema::R10};

inline const char* to_string(Schema s) {
  switch (s) {
    case Schema::R1: return "R1";
    case Schema::R2: return "R2";
    case Schema::R3: return "R3";
    case Schema::R4: return "R4";
    case Schema::R5: return "R5";
    case Schema::R6: return "R6'";
    case Schema::R7: return "R7'";
    case Schema::R9: return "R9";
    case Schema::R10: return "R10";
  }
  return "?";
}

using SchemaSet = std::uint32_t;
inline constexpr SchemaSet schema_bit(Schema s) { return SchemaSet{1} << static_cast<int>(s); }
inline constexpr SchemaSet kEverySchema = (SchemaSet{1} << 9) - 1;

/// A factor of a relator: a type (2) pair or a type (1) element held by id.
struct Term {
  bool type1 = false;
  Whitehead2 w;
  int id = -1;

  static Term of(const Whitehead2& w) { return {false, w, -1}; }
  static Term sigma(int id) { return {true, {}, id}; }
};

/// lhs_1 ∘ ... ∘ lhs_k = rhs_1 ∘ ... ∘ rhs_m.
struct RelatorInstance {
  static constexpr int kMaxTerms = 8;
  Schema schema = Schema::R1;
  std::array<Term, kMaxTerms> lhs{};
  std::array<Term, kMaxTerms> rhs{};
  int nl = 0, nr = 0;

  void left(const Term& t) { lhs[nl++] = t; }
  void right(const Term& t) { rhs[nr++] = t; }
};

struct Whitehead2Hash {
  std::size_t operator()(const Whitehead2& w) const noexcept {
    return std::hash<std::uint64_t>{}(w.set * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(w.a.index()));
  }
};

/// Everything the relator families range over for one tree.
class RelatorContext {
 public:
  explicit RelatorContext(const LabeledTree& t, std::size_t max_generators = Budget::from_environment().max_generators)
      : ctx_(t), raw_(enumerate_type2(ctx_, Forms::Raw, max_generators)), group_(ctx_) {
    for (const auto& g : group_.generators()) intern(g.sigma);
  }

  const AutContext& context() const { return ctx_; }
  const std::vector<Whitehead2>& raw() const { return raw_; }
  const TypeOneGroup& group() const { return group_; }

  int intern(const Whitehead1& s) {
    std::vector<int> key;
    for (Letter x : s.image) key.push_back(x.value());
    auto [it, fresh] = ids_.try_emplace(key, static_cast<int>(type1_.size()));
    if (fresh) {
      type1_.push_back(s);
      words_.push_back(group_.decompose(s));
    }
    return it->second;
  }
  const Whitehead1& type1(int id) const { return type1_.at(id); }
  /// Coxeter word of an interned type (1) element.
  const std::vector<int>& type1_word(int id) const { return words_.at(id); }

  const Automorphism& automorphism(const Term& t) {
    if (t.type1) {
      auto [it, fresh] = type1_cache_.try_emplace(t.id);
      if (fresh) it->second = to_automorphism(type1_.at(t.id));
      return it->second;
    }
    auto [it, fresh] = cache_.try_emplace(t.w);
    if (fresh) it->second = to_automorphism(ctx_, t.w);
    return it->second;
  }

  Automorphism product(const std::array<Term, RelatorInstance::kMaxTerms>& terms, int count) {
    Automorphism r = identity_automorphism(ctx_.size());
    for (int i = 0; i < count; ++i) r = compose(ctx_, r, automorphism(terms[i]));
    return r;
  }

  /// Both sides agree as automorphisms of A_T.
  bool holds(const RelatorInstance& r) {
    return aut_equal(ctx_, product(r.lhs, r.nl), product(r.rhs, r.nr));
  }

  void clear_cache() { cache_.clear(); }

 private:
  AutContext ctx_;
  std::vector<Whitehead2> raw_;
  TypeOneGroup group_;
  std::map<std::vector<int>, int> ids_;
  std::vector<Whitehead1> type1_;
  std::vector<std::vector<int>> words_;
  std::unordered_map<Whitehead2, Automorphism, Whitehead2Hash> cache_;
  std::map<int, Automorphism> type1_cache_;
};

struct EnumerationCounts {
  std::map<Schema, std::uint64_t> instances;
  /// Instances dropped because a derived pair fails Day's criterion.
  std::map<Schema, std::uint64_t> invalid;
};

/// Calls f(instance) for every instance of the selected families. Instances
/// whose derived terms are not automorphisms are counted and skipped.
template <class F>
EnumerationCounts for_each_relator(RelatorContext& rc, SchemaSet which, F&& f) {
  EnumerationCounts counts;
  const AutContext& ctx = rc.context();
  const auto& raw = rc.raw();
  const int n = ctx.size();
  auto on = [&](Schema s) { return (which & schema_bit(s)) != 0; };
  auto valid = [&](LetterSet A, Letter a) { return is_valid_type2(ctx, A, a); };
  RelatorInstance r;
  auto start = [&](Schema s) {
    r.schema = s;
    r.nl = r.nr = 0;
  };
  auto emit = [&] {
    ++counts.instances[r.schema];
    f(static_cast<const RelatorInstance&>(r));
  };
  auto skip = [&](Schema s) { ++counts.invalid[s]; };
  auto adjacent = [&](Letter x, Letter y) { return ctx.tree().adjacent(x.vertex(), y.vertex()); };

  if (on(Schema::R1))
    for (const auto& A : raw) {
      LetterSet inv = (A.set & ~bit(A.a)) | bit(A.a.inverse());
      if (!valid(inv, A.a.inverse())) {
        skip(Schema::R1);
        continue;
      }
      start(Schema::R1);
      r.left(Term::of(A));
      r.left(Term::of({inv, A.a.inverse()}));
      emit();
    }

  if (on(Schema::R2)) {
    std::vector<std::vector<const Whitehead2*>> by_letter(2 * n);
    for (const auto& A : raw) by_letter[A.a.index()].push_back(&A);
    for (const auto& group : by_letter)
      for (const Whitehead2* A : group)
        for (const Whitehead2* B : group) {
          if ((A->set & B->set) != bit(A->a)) continue;
          if (!valid(A->set | B->set, A->a)) {
            skip(Schema::R2);
            continue;
          }
          start(Schema::R2);
          r.left(Term::of(*A));
          r.left(Term::of(*B));
          r.right(Term::of({A->set | B->set, A->a}));
          emit();
        }
  }

  if (on(Schema::R3) || on(Schema::R4))
    for (const auto& B : raw) {
      const Letter b = B.a;
      for (const auto& A : raw) {
        const Letter a = A.a;
        if (B.set & (bit(a) | bit(a.inverse()))) continue;
        if (!((A.set & B.set) == 0 || adjacent(a, b))) continue;
        const bool has_b = contains(A.set, b), has_binv = contains(A.set, b.inverse());
        if (on(Schema::R3) && !has_b && !has_binv) {
          start(Schema::R3);
          r.left(Term::of(B));
          r.left(Term::of(A));
          r.right(Term::of(A));
          r.right(Term::of(B));
          emit();
        }
        if (on(Schema::R4) && !has_b && has_binv) {
          LetterSet moved = (B.set & ~bit(b)) | bit(a);
          if (!valid(moved, a)) {
            skip(Schema::R4);
            continue;
          }
          start(Schema::R4);
          r.left(Term::of(B));
          r.left(Term::of(A));
          r.right(Term::of(A));
          r.right(Term::of({moved, a}));
          r.right(Term::of(B));
          emit();
        }
      }
    }

  if (on(Schema::R5))
    for (const auto& A : raw) {
      const Letter a = A.a;
      for (Letter b : letters_of(A.set)) {
        if (b.vertex() == a.vertex() || contains(A.set, b.inverse()) || !ctx.sim(a.vertex(), b.vertex())) continue;
        LetterSet x = (A.set & ~bit(a)) | bit(a.inverse());
        LetterSet y = (A.set & ~bit(b)) | bit(b.inverse());
        if (!valid(x, b) || !valid(y, a)) {
          skip(Schema::R5);
          continue;
        }
        int s = rc.intern(sigma_ab(n, a, b));
        start(Schema::R5);
        r.left(Term::of({x, b}));
        r.left(Term::of(A));
        r.right(Term::of({y, a}));
        r.right(Term::sigma(s));
        emit();
      }
    }

  if (on(Schema::R6)) {
    const auto& gens = rc.group().generators();
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (const auto& A : raw) {
        const auto& s = gens[g].sigma;
        Whitehead2 image{s(A.set), s(A.a)};
        if (!valid(image.set, image.a)) {
          skip(Schema::R6);
          continue;
        }
        start(Schema::R6);
        r.left(Term::sigma(static_cast<int>(g)));
        r.left(Term::of(A));
        r.right(Term::of(image));
        r.right(Term::sigma(static_cast<int>(g)));
        emit();
      }
  }

  if (on(Schema::R7))
    for (const auto& word : rc.group().relations()) {
      start(Schema::R7);
      for (int g : word) r.left(Term::sigma(g));
      emit();
    }

  if (on(Schema::R9) || on(Schema::R10)) {
    std::vector<Whitehead2> conj;
    for (int i = 0; i < 2 * n; ++i) conj.push_back(conjugation(ctx, Letter::from_index(i)));
    for (const auto& A : raw) {
      const Letter a = A.a;
      for (int i = 0; i < 2 * n; ++i) {
        const Letter b = Letter::from_index(i);
        const bool has_b = contains(A.set, b), has_binv = contains(A.set, b.inverse());
        if (on(Schema::R9) && !has_b && !has_binv) {
          start(Schema::R9);
          r.left(Term::of(A));
          r.left(Term::of(conj[i]));
          r.right(Term::of(conj[i]));
          r.right(Term::of(A));
          emit();
        }
        if (on(Schema::R10) && has_b && !has_binv && b != a) {
          start(Schema::R10);
          r.left(Term::of(A));
          r.left(Term::of(conj[i]));
          r.right(Term::of(conj[a.index()]));
          r.right(Term::of(conj[i]));
          r.right(Term::of(A));
          emit();
        }
      }
    }
  }
  return counts;
}

struct SchemaReport {
  std::uint64_t instances = 0;
  std::uint64_t invalid = 0;
  std::uint64_t failures = 0;
};

struct RelatorReport {
  int n = 0;
  std::size_t raw_generators = 0;
  std::map<Schema, SchemaReport> schemas;
  std::vector<std::string> failure_samples;

  std::uint64_t failures() const {
    std::uint64_t f = 0;
    for (auto& [s, r] : schemas) f += r.failures;
    return f;
  }
  std::uint64_t instances() const {
    std::uint64_t c = 0;
    for (auto& [s, r] : schemas) c += r.instances;
    return c;
  }
};

inline std::string describe(RelatorContext& rc, const RelatorInstance& r) {
  auto side = [&](const std::array<Term, RelatorInstance::kMaxTerms>& ts, int k) {
    std::string s;
    for (int i = 0; i < k; ++i) {
      if (i) s += " ";
      s += ts[i].type1 ? "sigma#" + std::to_string(ts[i].id) : to_string(ts[i].w);
    }
    return s.empty() ? std::string("1") : s;
  };
  (void)rc;
  return std::string(to_string(r.schema)) + ": " + side(r.lhs, r.nl) + " = " + side(r.rhs, r.nr);
}

/// Checks every instance of the selected families as an identity of
/// automorphisms.
inline RelatorReport verify_relators(const LabeledTree& t, SchemaSet which = kEverySchema) {
  RelatorContext rc(t);
  RelatorReport rep;
  rep.n = t.size();
  rep.raw_generators = rc.raw().size();
  auto counts = for_each_relator(rc, which, [&](const RelatorInstance& r) {
    if (!rc.holds(r)) {
      ++rep.schemas[r.schema].failures;
      if (rep.failure_samples.size() < 5) rep.failure_samples.push_back(describe(rc, r));
    }
  });
  for (Schema s : kAllSchemas) {
    if (!(which & schema_bit(s))) continue;
    auto& sr = rep.schemas[s];
    sr.instances = counts.instances[s];
    sr.invalid = counts.invalid[s];
  }
  return rep;
}

}  // namespace raagtree
