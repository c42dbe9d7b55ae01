#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "raagtree/error.hpp"
#include "raagtree/tree.hpp"
#include "raagtree/word.hpp"

namespace raagtree {

/// Subset of L = V ∪ V⁻¹; bit Letter::index() marks membership.
using LetterSet = std::uint64_t;

constexpr int kMaxAutVertices = 32;

inline constexpr LetterSet bit(Letter x) { return LetterSet{1} << x.index(); }
inline constexpr LetterSet pair_bits(int v) { return LetterSet{3} << (2 * (v - 1)); }
inline constexpr bool contains(LetterSet s, Letter x) { return (s & bit(x)) != 0; }

inline LetterSet letter_set(std::initializer_list<Letter> xs) {
  LetterSet s = 0;
  for (auto x : xs) s |= bit(x);
  return s;
}

inline std::vector<Letter> letters_of(LetterSet s) {
  std::vector<Letter> out;
  while (s) {
    int i = std::countr_zero(s);
    out.push_back(Letter::from_index(i));
    s &= s - 1;
  }
  return out;
}

/// Per-tree data reused by every automorphism computation.
class AutContext {
 public:
  explicit AutContext(LabeledTree t) : t_(std::move(t)) {
    const int n = t_.size();
    if (n > kMaxAutVertices) throw Error(ErrorKind::TooLarge, "automorphism code supports at most 32 nodes");
    leq_.assign(n * n, 0);
    link_.assign(n + 1, 0);
    comps_.resize(n + 1);
    comp_vertices_.resize(n + 1);
    for (int v = 1; v <= n; ++v) {
      for (int w : t_.neighbors(v)) link_[v] |= pair_bits(w);
      all_ |= pair_bits(v);
    }
    for (int v = 1; v <= n; ++v)
      for (int w = 1; w <= n; ++w) leq_[(v - 1) * n + (w - 1)] = raagtree::leq(t_, v, w) ? 1 : 0;
    for (int v = 1; v <= n; ++v) build_components(v);
  }

  const LabeledTree& tree() const { return t_; }
  int size() const { return t_.size(); }
  LetterSet all_letters() const { return all_; }
  /// Both letters of every neighbour of v.
  LetterSet link_pairs(int v) const { return link_[v]; }
  bool leq(int v, int w) const { return leq_[(v - 1) * size() + (w - 1)] != 0; }
  bool sim(int v, int w) const { return leq(v, w) && leq(w, v); }
  /// Components of T minus st(v), as pair masks, ordered by smallest label.
  const std::vector<LetterSet>& components(int v) const { return comps_[v]; }
  const std::vector<std::vector<int>>& component_vertices(int v) const { return comp_vertices_[v]; }

 private:
  void build_components(int a) {
    const int n = size();
    std::vector<int> seen(n + 1, 0);
    seen[a] = 1;
    for (int w : t_.neighbors(a)) seen[w] = 1;
    for (int s = 1; s <= n; ++s) {
      if (seen[s]) continue;
      std::vector<int> comp{s};
      seen[s] = 1;
      for (std::size_t h = 0; h < comp.size(); ++h)
        for (int w : t_.neighbors(comp[h]))
          if (!seen[w]) seen[w] = 1, comp.push_back(w);
      std::sort(comp.begin(), comp.end());
      LetterSet m = 0;
      for (int v : comp) m |= pair_bits(v);
      comps_[a].push_back(m);
      comp_vertices_[a].push_back(std::move(comp));
    }
  }

  LabeledTree t_;
  LetterSet all_ = 0;
  std::vector<char> leq_;
  std::vector<LetterSet> link_;
  std::vector<std::vector<LetterSet>> comps_;
  std::vector<std::vector<std::vector<int>>> comp_vertices_;
};

/// Type (2) Whitehead automorphism (A, a).
struct Whitehead2 {
  LetterSet set = 0;
  Letter a;

  friend bool operator==(const Whitehead2&, const Whitehead2&) = default;
  friend auto operator<=>(const Whitehead2& x, const Whitehead2& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.set <=> y.set;
  }
};

inline constexpr LetterSet kEvenBits = 0x5555555555555555ULL;

/// Even-bit mask of the vertices v with both v and v⁻¹ in s.
inline constexpr LetterSet paired_vertices(LetterSet s) { return s & (s >> 1) & kEvenBits; }
inline constexpr LetterSet paired_letters(LetterSet s) {
  LetterSet p = paired_vertices(s);
  return p | (p << 1);
}

inline void check_pair_shape(LetterSet A, Letter a) {
  if (!contains(A, a)) throw Error(ErrorKind::MalformedPair, "a must lie in A");
  if (contains(A, a.inverse())) throw Error(ErrorKind::MalformedPair, "a^-1 must not lie in A");
}

/// Day's criterion: the paired vertices outside lk(a) form a union of
/// components of T - st(a), and every unpaired letter is dominated by a.
inline bool is_valid_type2(const AutContext& ctx, LetterSet A, Letter a) {
  check_pair_shape(A, a);
  if (A & ~ctx.all_letters()) throw Error(ErrorKind::BadLabel, "letter outside the tree");
  const int va = a.vertex();
  const LetterSet pairs = paired_letters(A) & ~ctx.link_pairs(va);
  for (LetterSet c : ctx.components(va)) {
    LetterSet hit = pairs & c;
    if (hit != 0 && hit != c) return false;
  }
  for (LetterSet singles = A & ~paired_letters(A); singles; singles &= singles - 1) {
    int v = std::countr_zero(singles) / 2 + 1;
    if (!ctx.leq(v, va)) return false;
  }
  return true;
}

inline bool is_valid_type2(const LabeledTree& t, LetterSet A, Letter a) { return is_valid_type2(AutContext(t), A, a); }

inline Whitehead2 make_whitehead2(const AutContext& ctx, LetterSet A, Letter a) {
  if (!is_valid_type2(ctx, A, a)) throw Error(ErrorKind::MalformedPair, "(A, a) does not define an automorphism");
  return {A, a};
}

/// Drops the pairs over lk(a), which the automorphism fixes anyway.
inline Whitehead2 canonical(const AutContext& ctx, const Whitehead2& w) {
  return {w.set & ~(paired_letters(w.set) & ctx.link_pairs(w.a.vertex())), w.a};
}

inline bool is_identity(const AutContext& ctx, const Whitehead2& w) { return canonical(ctx, w).set == bit(w.a); }

enum class Forms { Raw, Canonical };

/// All valid (A, a), built unit by unit: each component of T - st(a) and
/// each neighbour of a contributes none, its pair, or (when dominated by a)
/// one of its two letters. Canonical forms leave out the lk(a) pairs and
/// the identity ({a}, a).
inline std::vector<Whitehead2> enumerate_type2(const AutContext& ctx, Forms forms = Forms::Raw,
                                               std::size_t max_count = 200000) {
  const int n = ctx.size();
  if (n < 2) throw Error(ErrorKind::TooSmall, "Whitehead automorphisms need n >= 2");
  std::vector<Whitehead2> out;
  for (int idx = 0; idx < 2 * n; ++idx) {
    const Letter a = Letter::from_index(idx);
    const int va = a.vertex();
    std::vector<std::vector<LetterSet>> units;
    for (std::size_t i = 0; i < ctx.components(va).size(); ++i) {
      const auto& verts = ctx.component_vertices(va)[i];
      std::vector<LetterSet> opts{0, ctx.components(va)[i]};
      if (verts.size() == 1 && ctx.leq(verts[0], va)) {
        opts.push_back(bit(Letter::pos(verts[0])));
        opts.push_back(bit(Letter::neg(verts[0])));
      }
      units.push_back(std::move(opts));
    }
    for (int w : ctx.tree().neighbors(va)) {
      std::vector<LetterSet> opts{0};
      if (forms == Forms::Raw) opts.push_back(pair_bits(w));
      if (ctx.leq(w, va)) {
        opts.push_back(bit(Letter::pos(w)));
        opts.push_back(bit(Letter::neg(w)));
      }
      units.push_back(std::move(opts));
    }
    std::function<void(std::size_t, LetterSet)> rec = [&](std::size_t u, LetterSet acc) {
      if (u == units.size()) {
        if (forms == Forms::Canonical && acc == 0) return;
        if (out.size() >= max_count)
          throw Error(ErrorKind::TooLarge, "Whitehead generator count exceeds budget " + std::to_string(max_count));
        out.push_back({acc | bit(a), a});
        return;
      }
      for (LetterSet o : units[u]) rec(u + 1, acc | o);
    };
    rec(0, 0);
  }
  return out;
}

inline std::vector<Whitehead2> enumerate_type2(const LabeledTree& t, Forms forms = Forms::Raw) {
  return enumerate_type2(AutContext(t), forms);
}

/// Type (1) Whitehead automorphism: a permutation of L commuting with
/// inversion, stored as the images of the positive letters.
struct Whitehead1 {
  std::vector<Letter> image;

  static Whitehead1 identity(int n) {
    Whitehead1 s;
    for (int v = 1; v <= n; ++v) s.image.push_back(Letter::pos(v));
    return s;
  }
  static Whitehead1 inversion(int n, int v) {
    auto s = identity(n);
    s.image[v - 1] = Letter::neg(v);
    return s;
  }
  static Whitehead1 swap(int n, int v, int w) {
    auto s = identity(n);
    std::swap(s.image[v - 1], s.image[w - 1]);
    return s;
  }

  Letter operator()(Letter x) const {
    Letter y = image.at(x.vertex() - 1);
    return x.negative() ? y.inverse() : y;
  }
  LetterSet operator()(LetterSet s) const {
    LetterSet r = 0;
    for (LetterSet m = s; m; m &= m - 1) r |= bit((*this)(Letter::from_index(std::countr_zero(m))));
    return r;
  }
  Whitehead1 inverse() const {
    Whitehead1 r;
    r.image.resize(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
      Letter y = image[i];
      Letter x = Letter::pos(static_cast<int>(i) + 1);
      r.image[y.vertex() - 1] = y.negative() ? x.inverse() : x;
    }
    return r;
  }
  /// (this ∘ o)(x) = this(o(x)).
  Whitehead1 after(const Whitehead1& o) const {
    Whitehead1 r;
    for (Letter x : o.image) r.image.push_back((*this)(x));
    return r;
  }
  bool graphic() const {
    return std::none_of(image.begin(), image.end(), [](Letter x) { return x.negative(); });
  }

  friend bool operator==(const Whitehead1&, const Whitehead1&) = default;
};

/// The vertex map is a bijection that preserves adjacency.
inline bool is_valid_type1(const LabeledTree& t, const Whitehead1& s) {
  const int n = t.size();
  if (static_cast<int>(s.image.size()) != n) return false;
  std::vector<char> hit(n + 1, 0);
  for (Letter x : s.image) {
    if (x.vertex() < 1 || x.vertex() > n || hit[x.vertex()]) return false;
    hit[x.vertex()] = 1;
  }
  for (auto [u, v] : t.edges())
    if (!t.adjacent(s.image[u - 1].vertex(), s.image[v - 1].vertex())) return false;
  return true;
}

/// Graphic, preserves each ~-class setwise and fixes thin nodes.
inline bool is_sym1(const AutContext& ctx, const Whitehead1& s) {
  if (!s.graphic() || !is_valid_type1(ctx.tree(), s)) return false;
  for (int v = 1; v <= ctx.size(); ++v)
    if (!ctx.sim(v, s.image[v - 1].vertex())) return false;
  return true;
}

/// Automorphism of A_T given by the images of the generators 1..n, each in
/// normal form.
struct Automorphism {
  std::vector<Word> images;
  friend bool operator==(const Automorphism&, const Automorphism&) = default;
};

inline Automorphism identity_automorphism(int n) {
  Automorphism f;
  for (int v = 1; v <= n; ++v) f.images.push_back({Letter::pos(v)});
  return f;
}

/// Four-case rule on a generator.
inline Word image(const Whitehead2& w, int v) {
  const Letter c = Letter::pos(v);
  if (v == w.a.vertex()) return {c};
  const bool in = contains(w.set, c), inv = contains(w.set, c.inverse());
  Word r;
  if (inv) r.push_back(w.a.inverse());
  r.push_back(c);
  if (in) r.push_back(w.a);
  return r;
}

inline Automorphism to_automorphism(const AutContext& ctx, const Whitehead2& w) {
  Automorphism f;
  for (int v = 1; v <= ctx.size(); ++v) f.images.push_back(normal_form(ctx.tree(), image(w, v)));
  return f;
}

inline Automorphism to_automorphism(const Whitehead1& s) {
  Automorphism f;
  for (Letter x : s.image) f.images.push_back({x});
  return f;
}

inline Word apply(const AutContext& ctx, const Automorphism& f, const Word& w) {
  Word r;
  for (Letter x : w) {
    const Word& img = f.images.at(x.vertex() - 1);
    if (x.negative())
      for (auto it = img.rbegin(); it != img.rend(); ++it) r.push_back(it->inverse());
    else
      r.insert(r.end(), img.begin(), img.end());
  }
  return normal_form(ctx.tree(), r);
}

inline Word apply(const AutContext& ctx, const Whitehead2& w, const Word& word) {
  return apply(ctx, to_automorphism(ctx, w), word);
}
inline Word apply(const AutContext& ctx, const Whitehead1& s, const Word& word) {
  return apply(ctx, to_automorphism(s), word);
}

/// f ∘ g: g acts first.
inline Automorphism compose(const AutContext& ctx, const Automorphism& f, const Automorphism& g) {
  Automorphism r;
  for (const Word& img : g.images) r.images.push_back(apply(ctx, f, img));
  return r;
}

inline bool aut_equal(const AutContext& ctx, const Automorphism& f, const Automorphism& g) {
  for (int v = 1; v <= ctx.size(); ++v)
    if (normal_form(ctx.tree(), f.images[v - 1]) != normal_form(ctx.tree(), g.images[v - 1])) return false;
  return true;
}

/// (Y ∪ Y⁻¹ ∪ {a}, a) for a component Y of T - st(a).
inline Whitehead2 partial_conjugation(const AutContext& ctx, Letter a, std::size_t component) {
  return {ctx.components(a.vertex()).at(component) | bit(a), a};
}

/// Conjugation of everything by a: (L - a⁻¹, a).
inline Whitehead2 conjugation(const AutContext& ctx, Letter a) { return {ctx.all_letters() & ~bit(a.inverse()), a}; }

/// τ_ba = ({a, b}, a): b ↦ ba.
inline Whitehead2 transvection(Letter b, Letter a) { return {bit(a) | bit(b), a}; }

struct NamedPartialConjugation {
  Whitehead2 form;
  int a = 0;
  std::vector<int> component;
};

struct NamedGenerators {
  std::vector<Whitehead2> transvections;  // τ_ba, b ≤ a, b ≠ a
  std::vector<NamedPartialConjugation> partial_conjugations;
  std::vector<Whitehead1> inversions;  // one per node
  std::vector<int> thin_inversion_nodes;  // nodes whose inversion lies in Aut*
};

inline NamedGenerators named_generators(const AutContext& ctx) {
  const int n = ctx.size();
  if (n < 2) throw Error(ErrorKind::TooSmall, "named generators need n >= 2");
  NamedGenerators g;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      if (a != b && ctx.leq(b, a)) g.transvections.push_back(transvection(Letter::pos(b), Letter::pos(a)));
  for (int a = 1; a <= n; ++a)
    for (std::size_t i = 0; i < ctx.components(a).size(); ++i)
      g.partial_conjugations.push_back({partial_conjugation(ctx, Letter::pos(a), i), a, ctx.component_vertices(a)[i]});
  for (int v = 1; v <= n; ++v) {
    g.inversions.push_back(Whitehead1::inversion(n, v));
    if (!is_thin(ctx.tree(), v)) g.thin_inversion_nodes.push_back(v);
  }
  return g;
}

/// The type (1) part of Aut*(A_T): signed permutations inside each
/// nontrivial ~-class. Per class c_1 < ... < c_k it is the hyperoctahedral
/// group with Coxeter generators s_0 (invert c_1) and s_i (swap c_i, c_i+1).
class TypeOneGroup {
 public:
  struct Generator {
    Whitehead1 sigma;
    int cls = 0;
    int index = 0;  // 0 for the inversion, i for the swap of c_i and c_{i+1}
    std::string name;
  };

  explicit TypeOneGroup(const AutContext& ctx) : n_(ctx.size()), classes_(nontrivial_sim_classes(ctx.tree())) {
    class_of_.assign(n_ + 1, -1);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      const auto& cl = classes_[c];
      for (int v : cl) class_of_[v] = static_cast<int>(c);
      first_.push_back(static_cast<int>(gens_.size()));
      gens_.push_back({Whitehead1::inversion(n_, cl[0]), static_cast<int>(c), 0, "inv" + std::to_string(cl[0])});
      for (std::size_t i = 0; i + 1 < cl.size(); ++i)
        gens_.push_back({Whitehead1::swap(n_, cl[i], cl[i + 1]), static_cast<int>(c), static_cast<int>(i) + 1,
                         "swap" + std::to_string(cl[i]) + "_" + std::to_string(cl[i + 1])});
    }
  }

  const std::vector<std::vector<int>>& classes() const { return classes_; }
  const std::vector<Generator>& generators() const { return gens_; }
  int generator_id(int cls, int index) const { return first_.at(cls) + index; }

  /// Graphic generators of Sym¹ (adjacent swaps only).
  std::vector<int> sym1_generator_ids() const {
    std::vector<int> ids;
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].index > 0) ids.push_back(static_cast<int>(i));
    return ids;
  }

  bool contains(const Whitehead1& s) const {
    if (static_cast<int>(s.image.size()) != n_) return false;
    for (int v = 1; v <= n_; ++v) {
      int w = s.image[v - 1].vertex();
      if (class_of_[v] < 0 ? (w != v || s.image[v - 1].negative()) : class_of_[w] != class_of_[v]) return false;
    }
    return true;
  }

  /// Generator ids g_1 ... g_m with s = g_1 ∘ ... ∘ g_m.
  std::vector<int> decompose(const Whitehead1& s) const {
    if (!contains(s)) throw Error(ErrorKind::MalformedPair, "permutation leaves the type (1) group");
    std::vector<int> word;
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      const auto& cl = classes_[c];
      const int k = static_cast<int>(cl.size());
      auto pos = [&](int v) { return static_cast<int>(std::lower_bound(cl.begin(), cl.end(), v) - cl.begin()); };
      // s = P ∘ D with D flipping signs and P permuting.
      std::vector<int> img(k);
      std::vector<int> flips;
      for (int i = 0; i < k; ++i) {
        Letter y = s.image[cl[i] - 1];
        img[i] = pos(y.vertex());
        if (y.negative()) flips.push_back(i);
      }
      // Left-multiplying by s_j swaps the values j-1 and j of img; sort to identity.
      std::vector<int> swaps;
      for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> where(k);
        for (int i = 0; i < k; ++i) where[img[i]] = i;
        for (int j = 0; j + 1 < k; ++j)
          if (where[j] > where[j + 1]) {
            std::swap(img[where[j]], img[where[j + 1]]);
            swaps.push_back(j + 1);
            changed = true;
            break;
          }
      }
      for (int j : swaps) word.push_back(generator_id(static_cast<int>(c), j));
      // Inversion of c_i is w s_0 w⁻¹ with w = s_{i-1} ... s_1.
      for (int i : flips) {
        for (int j = i; j >= 1; --j) word.push_back(generator_id(static_cast<int>(c), j));
        word.push_back(generator_id(static_cast<int>(c), 0));
        for (int j = 1; j <= i; ++j) word.push_back(generator_id(static_cast<int>(c), j));
      }
    }
    return word;
  }

  Whitehead1 evaluate(const std::vector<int>& word) const {
    auto r = Whitehead1::identity(n_);
    for (int g : word) r = r.after(gens_.at(g).sigma);
    return r;
  }

  /// Words equal to the identity that present the group: squares, braid
  /// relations of type B within a class, commutation otherwise.
  std::vector<std::vector<int>> relations() const {
    std::vector<std::vector<int>> rel;
    const int m = static_cast<int>(gens_.size());
    for (int g = 0; g < m; ++g) rel.push_back({g, g});
    for (int g = 0; g < m; ++g)
      for (int h = g + 1; h < m; ++h) {
        int order = 2;
        if (gens_[g].cls == gens_[h].cls) {
          int i = gens_[g].index, j = gens_[h].index;
          if (j == i + 1) order = (i == 0) ? 4 : 3;
        }
        std::vector<int> w;
        for (int r = 0; r < order; ++r) w.push_back(g), w.push_back(h);
        rel.push_back(std::move(w));
      }
    return rel;
  }

 private:
  int n_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  std::vector<int> first_;
  std::vector<Generator> gens_;
};

/// σ_ab: a ↦ b⁻¹, b ↦ a, fixing the other generators.
inline Whitehead1 sigma_ab(int n, Letter a, Letter b) {
  auto s = Whitehead1::identity(n);
  auto set = [&](Letter x, Letter y) { s.image[x.vertex() - 1] = x.negative() ? y.inverse() : y; };
  set(a, b.inverse());
  set(b, a);
  return s;
}

/// Deep partial conjugations c_{Y,a}: a positive, ∂a ≥ 3.
struct OmegaEntry {
  int a = 0;
  std::size_t component = 0;
  LetterSet pairs = 0;
};

inline std::vector<OmegaEntry> omega(const AutContext& ctx) {
  std::vector<OmegaEntry> out;
  if (ctx.size() < 2) return out;
  auto p = boundary_profile(ctx.tree());
  for (int a = 1; a <= ctx.size(); ++a) {
    if (p.to_boundary[a] < 3) continue;
    for (std::size_t i = 0; i < ctx.components(a).size(); ++i) out.push_back({a, i, ctx.components(a)[i]});
  }
  return out;
}

/// Image under φ: Aut* → ℤ^Ω. Zero unless a sits over a deep node; there
/// (A, a) splits uniquely into the components it contains, and (A, a⁻¹)
/// takes the opposite sign.
inline std::vector<long> phi(const AutContext& ctx, const std::vector<OmegaEntry>& om, const Whitehead2& w) {
  std::vector<long> r(om.size(), 0);
  const int va = w.a.vertex();
  const LetterSet body = paired_letters(w.set) & ~ctx.link_pairs(va);
  const long sign = w.a.negative() ? -1 : 1;
  bool deep = false;
  for (std::size_t i = 0; i < om.size(); ++i) {
    if (om[i].a != va) continue;
    deep = true;
    if ((body & om[i].pairs) == om[i].pairs) r[i] = sign;
  }
  if (deep && (w.set & ~paired_letters(w.set) & ~bit(w.a)))
    throw Error(ErrorKind::MalformedPair, "unpaired letter dominated by a deep node");
  return r;
}

inline nlohmann::json to_json(const Whitehead2& w) {
  nlohmann::json A = nlohmann::json::array();
  A.push_back(w.a.to_string());
  for (Letter x : letters_of(w.set))
    if (x != w.a) A.push_back(x.to_string());
  return {{"a", w.a.to_string()}, {"A", A}};
}

inline Whitehead2 whitehead2_from_json(const nlohmann::json& j) {
  Whitehead2 w;
  w.a = Letter::parse(j.at("a").get<std::string>());
  for (const auto& x : j.at("A")) w.set |= bit(Letter::parse(x.get<std::string>()));
  check_pair_shape(w.set, w.a);
  return w;
}

inline std::string to_string(const Whitehead2& w) { return to_json(w).dump(); }

}  // namespace raagtree
