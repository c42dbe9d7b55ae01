#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "raagtree/error.hpp"
#include "raagtree/tree.hpp"

namespace raagtree {

/// A generator of A_T or its inverse. Ordered by vertex label, then positive
/// before negative.
class Letter {
 public:
  constexpr Letter() = default;
  static constexpr Letter pos(int v) { return Letter(v); }
  static constexpr Letter neg(int v) { return Letter(-v); }
  static constexpr Letter from_index(int i) { return (i & 1) ? neg(i / 2 + 1) : pos(i / 2 + 1); }

  constexpr int vertex() const { return value_ < 0 ? -value_ : value_; }
  constexpr bool negative() const { return value_ < 0; }
  constexpr Letter inverse() const { return Letter(-value_); }
  /// Bit position inside a LetterSet.
  constexpr int index() const { return 2 * (vertex() - 1) + (negative() ? 1 : 0); }
  constexpr int value() const { return value_; }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr std::strong_ordering operator<=>(Letter a, Letter b) { return a.index() <=> b.index(); }

  std::string to_string() const { return (negative() ? "-" : "+") + std::to_string(vertex()); }

  static Letter parse(const std::string& s) {
    if (s.size() < 2 || (s[0] != '+' && s[0] != '-')) throw Error(ErrorKind::Parse, "letter must look like +3 or -3: '" + s + "'");
    int v = 0;
    try {
      v = std::stoi(s.substr(1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad letter '" + s + "'");
    }
    if (v < 1) throw Error(ErrorKind::BadLabel, "letter vertex must be positive");
    return s[0] == '-' ? neg(v) : pos(v);
  }

 private:
  constexpr explicit Letter(int value) : value_(value) {}
  int value_ = 1;
};

using Word = std::vector<Letter>;

inline Word inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inverse());
  return r;
}

inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (auto x : w) out += x.to_string();
  return out;
}

/// Letters over distinct adjacent vertices commute in A_T.
inline bool commute(const LabeledTree& t, Letter x, Letter y) {
  return x.vertex() != y.vertex() && t.adjacent(x.vertex(), y.vertex());
}

/// Canonical representative of a word in A_T.
///
/// First a reduced word: each incoming letter cancels against the nearest
/// inverse that it can be shuffled next to. Reduced words of the same element
/// differ only by commutations, so the lexicographically least shuffle of the
/// reduced word is a normal form; it is built by repeatedly emitting the
/// smallest letter that commutes with everything still in front of it.
inline Word normal_form(const LabeledTree& t, const Word& w) {
  Word reduced;
  reduced.reserve(w.size());
  for (Letter x : w) {
    t.check_label(x.vertex());
    bool cancelled = false;
    for (std::size_t j = reduced.size(); j-- > 0;) {
      if (reduced[j] == x.inverse()) {
        reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(j));
        cancelled = true;
        break;
      }
      if (!commute(t, reduced[j], x)) break;
    }
    if (!cancelled) reduced.push_back(x);
  }

  Word out;
  out.reserve(reduced.size());
  while (!reduced.empty()) {
    std::size_t best = 0;
    bool found = false;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (found && !(reduced[i] < reduced[best])) continue;
      bool free = true;
      for (std::size_t j = 0; j < i; ++j) {
        if (!commute(t, reduced[j], reduced[i])) {
          free = false;
          break;
        }
      }
      if (free) {
        best = i;
        found = true;
      }
    }
    out.push_back(reduced[best]);
    reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace raagtree
