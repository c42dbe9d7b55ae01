#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <fstream>
#include <istream>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "raagtree/error.hpp"

namespace raagtree {

using Edge = std::pair<int, int>;

/// Unrooted tree on the labels 1..n. Immutable once built; adjacency is kept
/// in compressed form with each neighbor list sorted ascending.
class LabeledTree {
 public:
  LabeledTree() : LabeledTree(1, {}) {}

  static LabeledTree from_edges(int n, std::span<const Edge> edges) { return LabeledTree(n, edges); }

  static LabeledTree from_edges(int n, std::initializer_list<Edge> edges) {
    std::vector<Edge> e(edges);
    return LabeledTree(n, e);
  }

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const int> neighbors(int v) const {
    check_label(v);
    return {adj_.data() + offset_[v], adj_.data() + offset_[v + 1]};
  }

  int degree(int v) const {
    check_label(v);
    return offset_[v + 1] - offset_[v];
  }

  bool is_leaf(int v) const { return degree(v) == 1; }

  bool adjacent(int u, int v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  void check_label(int v) const {
    if (v < 1 || v > n_) throw Error(ErrorKind::BadLabel, "node " + std::to_string(v) + " not in 1.." + std::to_string(n_));
  }

  /// Breadth-first distances from `source`; index 0 is unused.
  std::vector<int> distances_from(int source) const {
    check_label(source);
    std::vector<int> dist(n_ + 1, -1);
    std::vector<int> queue{source};
    queue.reserve(n_);
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (int w : neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return dist;
  }

  int distance(int u, int v) const { return distances_from(u)[v]; }

  friend bool operator==(const LabeledTree& a, const LabeledTree& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  LabeledTree(int n, std::span<const Edge> edges) : n_(n) {
    if (n < 1) throw Error(ErrorKind::NotATree, "tree needs at least one node");
    if (static_cast<int>(edges.size()) != n - 1)
      throw Error(ErrorKind::NotATree, "expected " + std::to_string(n - 1) + " edges, got " + std::to_string(edges.size()));
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
      if (u < 1 || u > n || v < 1 || v > n)
        throw Error(ErrorKind::BadLabel, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") outside 1.." + std::to_string(n));
      if (u == v) throw Error(ErrorKind::NotATree, "self-loop at " + std::to_string(u));
      edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw Error(ErrorKind::NotATree, "duplicate edge");

    offset_.assign(n + 2, 0);
    for (auto [u, v] : edges_) {
      ++offset_[u + 1];
      ++offset_[v + 1];
    }
    std::partial_sum(offset_.begin(), offset_.end(), offset_.begin());
    adj_.resize(2 * edges_.size());
    std::vector<int> fill(offset_.begin(), offset_.end() - 1);
    for (auto [u, v] : edges_) {
      adj_[fill[u]++] = v;
      adj_[fill[v]++] = u;
    }
    for (int v = 1; v <= n; ++v) std::sort(adj_.begin() + offset_[v], adj_.begin() + offset_[v + 1]);

    // n-1 distinct edges and connected <=> tree
    auto dist = distances_from(1);
    if (std::count(dist.begin() + 1, dist.end(), -1) != 0) throw Error(ErrorKind::NotATree, "graph is disconnected");
  }

  int n_;
  std::vector<Edge> edges_;
  std::vector<int> offset_;
  std::vector<int> adj_;
};

// ---------------------------------------------------------------------------
// Pruefer coding, "smallest leaf first" convention.

struct PruferCode {
  int n = 1;
  std::vector<int> code;

  static PruferCode make(int n, std::vector<int> code) {
    if (n < 1) throw Error(ErrorKind::BadLabel, "node count must be positive");
    if (static_cast<int>(code.size()) != std::max(n - 2, 0))
      throw Error(ErrorKind::BadLabel, "code length must be max(n-2, 0)");
    for (int c : code)
      if (c < 1 || c > n) throw Error(ErrorKind::BadLabel, "code symbol " + std::to_string(c) + " outside 1.." + std::to_string(n));
    return PruferCode{n, std::move(code)};
  }

  friend bool operator==(const PruferCode&, const PruferCode&) = default;
};

/// Edge list of the tree with the given code. Linear time; `degree` is scratch
/// space of size n+1 so that enumeration loops can reuse it.
inline void prufer_edges(int n, std::span<const int> code, std::vector<int>& degree, std::vector<Edge>& out) {
  out.clear();
  if (n == 1) return;
  degree.assign(n + 1, 1);
  for (int c : code) ++degree[c];
  int ptr = 1;
  while (degree[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int c : code) {
    out.emplace_back(leaf, c);
    if (--degree[c] == 1 && c < ptr) {
      leaf = c;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  out.emplace_back(leaf, n);
}

inline LabeledTree prufer_decode(const PruferCode& code) {
  auto checked = PruferCode::make(code.n, code.code);
  std::vector<int> degree;
  std::vector<Edge> edges;
  prufer_edges(checked.n, checked.code, degree, edges);
  return LabeledTree::from_edges(checked.n, edges);
}

inline PruferCode prufer_encode(const LabeledTree& t) {
  const int n = t.size();
  PruferCode out{n, {}};
  if (n <= 2) return out;
  // parent pointers with root n
  std::vector<int> parent(n + 1, 0);
  std::vector<int> stack{n};
  std::vector<char> seen(n + 1, 0);
  seen[n] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : t.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        stack.push_back(w);
      }
    }
  }
  std::vector<int> degree(n + 1);
  for (int v = 1; v <= n; ++v) degree[v] = t.degree(v);
  int ptr = 1;
  while (degree[ptr] != 1) ++ptr;
  int leaf = ptr;
  out.code.reserve(n - 2);
  for (int i = 0; i < n - 2; ++i) {
    int next = parent[leaf];
    out.code.push_back(next);
    if (--degree[next] == 1 && next < ptr) {
      leaf = next;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distance to the boundary, deep nodes and the invariant Upsilon.

struct BoundaryProfile {
  std::vector<int> to_boundary;  // index 0 unused
  std::vector<int> deep;         // ascending labels
  bool shallow = true;
  std::int64_t upsilon = 0;
};

/// Number of nodes at distance exactly two from v.
inline std::int64_t second_neighbourhood_size(const LabeledTree& t, int v) {
  std::int64_t total = 0;
  for (int w : t.neighbors(v)) total += t.degree(w) - 1;
  return total;
}

inline BoundaryProfile boundary_profile(const LabeledTree& t) {
  const int n = t.size();
  if (n < 2) throw Error(ErrorKind::TooSmall, "boundary is undefined for a single node");
  BoundaryProfile p;
  p.to_boundary.assign(n + 1, -1);
  std::vector<int> queue;
  queue.reserve(n);
  for (int v = 1; v <= n; ++v) {
    if (t.degree(v) == 1) {
      p.to_boundary[v] = 0;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int w : t.neighbors(u)) {
      if (p.to_boundary[w] < 0) {
        p.to_boundary[w] = p.to_boundary[u] + 1;
        queue.push_back(w);
      }
    }
  }
  for (int v = 1; v <= n; ++v) {
    if (p.to_boundary[v] >= 3) {
      p.deep.push_back(v);
      p.upsilon += second_neighbourhood_size(t, v);
    }
  }
  p.shallow = p.deep.empty();
  return p;
}

// ---------------------------------------------------------------------------
// The vertex preorder: v <= w iff lk(v) is contained in st(w).

inline bool leq(const LabeledTree& t, int v, int w) {
  t.check_label(w);
  for (int u : t.neighbors(v))
    if (u != w && !t.adjacent(u, w)) return false;
  return true;
}

inline bool sim(const LabeledTree& t, int v, int w) { return leq(t, v, w) && leq(t, w, v); }

inline bool is_thin(const LabeledTree& t, int v) {
  t.check_label(v);
  for (int w = 1; w <= t.size(); ++w)
    if (w != v && sim(t, v, w)) return false;
  return true;
}

/// The tree form of the preorder: a leaf below anything within distance two.
/// Reflexive pairs are answered directly since the leaf clause fails for v = w
/// whenever v is interior.
inline bool leq_tree_characterization(const LabeledTree& t, int v, int w) {
  if (t.size() < 3) throw Error(ErrorKind::TooSmall, "tree characterization needs at least three nodes");
  t.check_label(v);
  t.check_label(w);
  if (v == w) return true;
  return t.is_leaf(v) && t.distance(v, w) <= 2;
}

/// Two distinct nodes are equivalent iff both are leaves hanging off one node.
inline bool sim_tree_characterization(const LabeledTree& t, int v, int w) {
  if (t.size() < 3) throw Error(ErrorKind::TooSmall, "tree characterization needs at least three nodes");
  t.check_label(v);
  t.check_label(w);
  if (v == w) return true;
  if (!t.is_leaf(v) || !t.is_leaf(w)) return false;
  return t.neighbors(v)[0] == t.neighbors(w)[0];
}

/// Equivalence classes of the preorder with at least two members, each sorted.
inline std::vector<std::vector<int>> nontrivial_sim_classes(const LabeledTree& t) {
  const int n = t.size();
  std::vector<char> done(n + 1, 0);
  std::vector<std::vector<int>> classes;
  for (int v = 1; v <= n; ++v) {
    if (done[v]) continue;
    std::vector<int> cls{v};
    for (int w = v + 1; w <= n; ++w)
      if (!done[w] && sim(t, v, w)) cls.push_back(w);
    for (int w : cls) done[w] = 1;
    if (cls.size() > 1) classes.push_back(std::move(cls));
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Relabeling and isomorphism-invariant form.

/// Tree with node v renamed to perm[v] (perm is 1-based, perm[0] ignored).
inline LabeledTree relabel(const LabeledTree& t, std::span<const int> perm) {
  std::vector<Edge> edges;
  edges.reserve(t.edges().size());
  for (auto [u, v] : t.edges()) edges.emplace_back(perm[u], perm[v]);
  return LabeledTree::from_edges(t.size(), edges);
}

namespace detail {

inline std::string rooted_encoding(const LabeledTree& t, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : t.neighbors(v))
    if (w != parent) kids.push_back(rooted_encoding(t, w, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (auto& k : kids) out += k;
  out += ")";
  return out;
}

inline std::vector<int> centers(const LabeledTree& t) {
  const int n = t.size();
  if (n == 1) return {1};
  std::vector<int> degree(n + 1);
  std::vector<int> layer;
  for (int v = 1; v <= n; ++v) {
    degree[v] = t.degree(v);
    if (degree[v] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer)
      for (int w : t.neighbors(v))
        if (--degree[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace detail

/// Canonical string of the unlabeled tree (AHU encoding rooted at the center).
inline std::string canonical_form(const LabeledTree& t) {
  auto c = detail::centers(t);
  std::string best = detail::rooted_encoding(t, c[0], 0);
  if (c.size() == 2) best = std::min(best, detail::rooted_encoding(t, c[1], 0));
  return best;
}

// ---------------------------------------------------------------------------
// Text format: "n" then n-1 lines "u v", or a single "prufer: c1 ... c_{n-2}".

inline LabeledTree parse_tree(std::istream& in) {
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw Error(ErrorKind::Parse, "empty tree description");

  auto first = lines.front();
  auto start = first.find_first_not_of(" \t");
  if (first.compare(start, 7, "prufer:") == 0) {
    std::string symbols = first.substr(start + 7);
    for (std::size_t i = 1; i < lines.size(); ++i) symbols += " " + lines[i];
    std::istringstream ss(symbols);
    std::vector<int> code;
    std::string tok;
    while (ss >> tok) {
      try {
        code.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "bad code symbol '" + tok + "'");
      }
    }
    int n = static_cast<int>(code.size()) + 2;
    return prufer_decode(PruferCode::make(n, std::move(code)));
  }

  std::istringstream body;
  std::string all;
  for (auto& l : lines) all += l + "\n";
  body.str(all);
  int n = 0;
  if (!(body >> n)) throw Error(ErrorKind::Parse, "expected node count on the first line");
  std::vector<Edge> edges;
  int u = 0, v = 0;
  while (body >> u) {
    if (!(body >> v)) throw Error(ErrorKind::Parse, "dangling edge endpoint");
    edges.emplace_back(u, v);
  }
  if (!body.eof()) throw Error(ErrorKind::Parse, "non-numeric token in edge list");
  return LabeledTree::from_edges(n, edges);
}

inline LabeledTree parse_tree(const std::string& text) {
  std::istringstream in(text);
  return parse_tree(in);
}

inline LabeledTree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  return parse_tree(in);
}

inline std::string to_text(const LabeledTree& t) {
  std::ostringstream out;
  out << t.size() << "\n";
  for (auto [u, v] : t.edges()) out << u << " " << v << "\n";
  return out.str();
}

// Small named families used throughout the tests and the CLI.

inline LabeledTree path_tree(int n) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) e.emplace_back(v, v + 1);
  return LabeledTree::from_edges(n, e);
}

/// Star with center 1 and leaves 2..n.
inline LabeledTree star_tree(int n) {
  std::vector<Edge> e;
  for (int v = 2; v <= n; ++v) e.emplace_back(1, v);
  return LabeledTree::from_edges(n, e);
}

}  // namespace raagtree
