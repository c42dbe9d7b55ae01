#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "raagtree/budget.hpp"
#include "raagtree/error.hpp"
#include "raagtree/tree.hpp"

namespace raagtree {

struct RootedTree {
  LabeledTree tree;
  int root = 1;

  static RootedTree make(LabeledTree t, int root) {
    t.check_label(root);
    return RootedTree{std::move(t), root};
  }
};

inline std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// u_n = n^(n-2), with u_1 = 1.
inline std::uint64_t unrooted_count(int n) { return n <= 2 ? 1 : ipow(n, n - 2); }
inline std::uint64_t rooted_count(int n) { return ipow(n, n - 1); }

inline void check_enumeration_budget(int n, int max_n) {
  if (n < 1) throw Error(ErrorKind::BadLabel, "node count must be positive");
  if (n > max_n)
    throw Error(ErrorKind::TooLarge, "exhaustive enumeration at n=" + std::to_string(n) + " exceeds budget n<=" + std::to_string(max_n));
}

/// Calls f(tree) for the trees whose Pruefer index lies in [first, last).
/// The index is the code read as a base-n numeral, most significant symbol first.
template <class F>
void for_each_unrooted_in_range(int n, std::uint64_t first, std::uint64_t last, F&& f) {
  const int len = std::max(n - 2, 0);
  last = std::min(last, unrooted_count(n));
  if (first >= last) return;
  std::vector<int> code(len, 1);
  std::uint64_t idx = first;
  for (int i = len - 1; i >= 0; --i) {
    code[i] = static_cast<int>(idx % n) + 1;
    idx /= n;
  }
  std::vector<int> degree;
  std::vector<Edge> edges;
  for (std::uint64_t i = first; i < last; ++i) {
    prufer_edges(n, code, degree, edges);
    f(LabeledTree::from_edges(n, edges));
    for (int j = len - 1; j >= 0; --j) {
      if (code[j] < n) {
        ++code[j];
        break;
      }
      code[j] = 1;
    }
  }
}

/// Every labeled tree on n nodes exactly once.
template <class F>
void enumerate_unrooted(int n, F&& f, int max_n = Budget::from_environment().enumeration_max_n) {
  check_enumeration_budget(n, max_n);
  for_each_unrooted_in_range(n, 0, unrooted_count(n), std::forward<F>(f));
}

/// Every rooted labeled tree on n nodes exactly once (each tree times n roots).
template <class F>
void enumerate_rooted(int n, F&& f, int max_n = Budget::from_environment().enumeration_max_n) {
  enumerate_unrooted(
      n,
      [&](const LabeledTree& t) {
        for (int r = 1; r <= n; ++r) f(RootedTree{t, r});
      },
      max_n);
}

// ---------------------------------------------------------------------------
// Rooted statistics. In a rooted tree the boundary is the set of childless
// nodes, so a root of degree one is not itself on the boundary.

inline int root_boundary_distance(const LabeledTree& t, int root) {
  const int n = t.size();
  if (n == 1) return 0;
  auto dist = t.distances_from(root);
  int best = n;
  for (int v = 1; v <= n; ++v)
    if (v != root && t.degree(v) == 1) best = std::min(best, dist[v]);
  return best;
}

inline int root_boundary_distance(const RootedTree& rt) { return root_boundary_distance(rt.tree, rt.root); }

inline std::int64_t second_generation_count(const LabeledTree& t, int root) {
  return second_neighbourhood_size(t, root);
}

inline std::int64_t second_generation_count(const RootedTree& rt) { return second_generation_count(rt.tree, rt.root); }

inline int root_height(const LabeledTree& t, int root) {
  auto dist = t.distances_from(root);
  return *std::max_element(dist.begin() + 1, dist.end());
}

inline int root_height(const RootedTree& rt) { return root_height(rt.tree, rt.root); }

/// Distance from the root to the nearest degree-one node of the underlying
/// unrooted tree (zero when the root itself is a leaf).
inline int root_leaf_distance(const LabeledTree& t, int root) {
  if (t.size() == 1) return 0;
  auto dist = t.distances_from(root);
  int best = t.size();
  for (int v = 1; v <= t.size(); ++v)
    if (t.degree(v) == 1) best = std::min(best, dist[v]);
  return best;
}

// ---------------------------------------------------------------------------
// Uniform sampling through uniform Pruefer codes.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream `stream` of the sampler draws from seed xor stream.
class UniformTreeSampler {
 public:
  UniformTreeSampler(int n, std::uint64_t seed, std::uint64_t stream = 0)
      : n_(n), rng_(splitmix64(seed ^ stream)), code_(std::max(n - 2, 0)) {
    if (n < 2) throw Error(ErrorKind::TooSmall, "sampling needs n >= 2");
  }

  int uniform_label() {
    auto x = static_cast<unsigned __int128>(rng_()) * static_cast<unsigned>(n_);
    return static_cast<int>(x >> 64) + 1;
  }

  const std::vector<int>& next_code() {
    for (auto& c : code_) c = uniform_label();
    return code_;
  }

  LabeledTree next() {
    next_code();
    prufer_edges(n_, code_, degree_, edges_);
    return LabeledTree::from_edges(n_, edges_);
  }

 private:
  int n_;
  std::mt19937_64 rng_;
  std::vector<int> code_;
  std::vector<int> degree_;
  std::vector<Edge> edges_;
};

/// Half-open sample range handled by stream s when `count` samples are split
/// over `streams` streams.
inline std::pair<std::uint64_t, std::uint64_t> stream_range(std::uint64_t count, int streams, int s) {
  return {count * s / streams, count * (s + 1) / streams};
}

inline std::vector<LabeledTree> sample_uniform(int n, std::uint64_t seed, std::uint64_t count, int streams = 1) {
  std::vector<LabeledTree> out;
  out.reserve(count);
  for (int s = 0; s < streams; ++s) {
    auto [lo, hi] = stream_range(count, streams, s);
    UniformTreeSampler sampler(n, seed, s);
    for (auto i = lo; i < hi; ++i) out.push_back(sampler.next());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Statistics.

enum class Statistic { DeepFraction, UpsilonPerNode, ProbRootDeep, MeanY, MeanNGivenDeep };
enum class Mode { Exhaustive, MonteCarlo, ExactSeries };

inline const char* to_string(Statistic s) {
  switch (s) {
    case Statistic::DeepFraction: return "deep-fraction";
    case Statistic::UpsilonPerNode: return "upsilon-per-node";
    case Statistic::ProbRootDeep: return "prob-root-deep";
    case Statistic::MeanY: return "mean-y";
    case Statistic::MeanNGivenDeep: return "mean-n-given-deep";
  }
  return "?";
}

inline Statistic parse_statistic(const std::string& s) {
  for (auto st : {Statistic::DeepFraction, Statistic::UpsilonPerNode, Statistic::ProbRootDeep, Statistic::MeanY,
                  Statistic::MeanNGivenDeep})
    if (s == to_string(st)) return st;
  if (s == "prob-deep-root") return Statistic::ProbRootDeep;
  throw Error(ErrorKind::Parse, "unknown statistic '" + s + "'");
}

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::Exhaustive: return "exhaustive";
    case Mode::MonteCarlo: return "montecarlo";
    case Mode::ExactSeries: return "exact-series";
  }
  return "?";
}

inline bool is_rooted(Statistic s) { return s != Statistic::DeepFraction && s != Statistic::UpsilonPerNode; }

struct StatReport {
  std::string statistic;
  int n = 0;
  Mode mode = Mode::Exhaustive;
  std::optional<mpq_class> exact;  // exhaustive and exact-series only
  double value = 0.0;
  std::optional<double> stderr_value;
  std::optional<std::pair<double, double>> ci95;
  std::uint64_t samples = 0;  // trees sampled or enumerated
  std::optional<std::uint64_t> seed;
};

/// Per-tree sums shared by the exhaustive and the Monte Carlo estimators.
struct TreeTally {
  std::int64_t deep = 0;
  std::int64_t upsilon = 0;
};

inline TreeTally tally(const LabeledTree& t) {
  auto p = boundary_profile(t);
  return {static_cast<std::int64_t>(p.deep.size()), p.upsilon};
}

/// Rooted quantities for one root: the childless boundary distance and Y.
struct RootTally {
  bool deep = false;  // childless boundary distance >= 3
  std::int64_t second_generation = 0;
};

inline RootTally root_tally(const LabeledTree& t, int root, const BoundaryProfile& p) {
  RootTally r;
  int d = t.degree(root) >= 2 ? p.to_boundary[root] : root_boundary_distance(t, root);
  r.deep = d >= 3;
  r.second_generation = second_generation_count(t, root);
  return r;
}

struct ExhaustiveSums {
  std::uint64_t trees = 0;
  std::uint64_t rooted = 0;
  std::uint64_t deep = 0;          // sum over U_n of |D(T)|
  std::uint64_t upsilon = 0;       // sum over U_n of Upsilon(T)
  std::uint64_t root_deep = 0;     // rooted trees with childless distance >= 3
  std::uint64_t y = 0;             // sum over rooted trees of Y
};

inline ExhaustiveSums exhaustive_sums(int n, int max_n = Budget::from_environment().enumeration_max_n) {
  check_enumeration_budget(n, max_n);
  ExhaustiveSums s;
  if (n == 1) {
    s.trees = s.rooted = 1;
    return s;
  }
  enumerate_unrooted(
      n,
      [&](const LabeledTree& t) {
        auto p = boundary_profile(t);
        ++s.trees;
        s.deep += p.deep.size();
        s.upsilon += static_cast<std::uint64_t>(p.upsilon);
        for (int r = 1; r <= n; ++r) {
          ++s.rooted;
          auto rt = root_tally(t, r, p);
          if (rt.deep) {
            ++s.root_deep;
            s.y += static_cast<std::uint64_t>(rt.second_generation);
          }
        }
      },
      max_n);
  return s;
}

inline mpq_class exhaustive_value(Statistic stat, int n, const ExhaustiveSums& s) {
  auto q = [](std::uint64_t num, std::uint64_t den) {
    mpq_class r{mpz_class(std::to_string(num)), mpz_class(std::to_string(den))};
    r.canonicalize();
    return r;
  };
  switch (stat) {
    case Statistic::DeepFraction: return q(s.deep, s.trees * n);
    case Statistic::UpsilonPerNode: return q(s.upsilon, s.trees * n);
    case Statistic::ProbRootDeep: return q(s.root_deep, s.rooted);
    case Statistic::MeanY: return q(s.y, s.rooted);
    case Statistic::MeanNGivenDeep:
      if (s.root_deep == 0) throw Error(ErrorKind::DivByZero, "no rooted tree on " + std::to_string(n) + " nodes has a deep root");
      return q(s.y, s.root_deep);
  }
  return 0;
}

/// Running moments for one Monte Carlo stream.
struct Moments {
  std::uint64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }
  void merge(const Moments& o) {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double mean() const { return count ? sum / count : 0.0; }
  double standard_error() const {
    if (count < 2) return 0.0;
    double m = mean();
    double var = (sum_sq - count * m * m) / (count - 1);
    return std::sqrt(std::max(var, 0.0) / count);
  }
};

struct MonteCarloOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int streams = 16;  // fixed partition of the sample; results depend on it, not on workers
  int workers = 1;
};

inline Moments monte_carlo_stream(Statistic stat, int n, std::uint64_t count, std::uint64_t seed, int stream) {
  Moments m;
  UniformTreeSampler sampler(n, seed, stream);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto t = sampler.next();
    auto p = boundary_profile(t);
    switch (stat) {
      case Statistic::DeepFraction: m.add(static_cast<double>(p.deep.size()) / n); break;
      case Statistic::UpsilonPerNode: m.add(static_cast<double>(p.upsilon) / n); break;
      default: {
        auto rt = root_tally(t, sampler.uniform_label(), p);
        if (stat == Statistic::ProbRootDeep) m.add(rt.deep ? 1.0 : 0.0);
        else if (stat == Statistic::MeanY) m.add(rt.deep ? static_cast<double>(rt.second_generation) : 0.0);
        else if (rt.deep) m.add(static_cast<double>(rt.second_generation));
      }
    }
  }
  return m;
}

inline StatReport estimate_monte_carlo(Statistic stat, int n, const MonteCarloOptions& opt) {
  if (opt.streams < 1) throw Error(ErrorKind::BadLabel, "stream count must be positive");
  std::vector<Moments> parts(opt.streams);
  auto run = [&](int s) {
    auto [lo, hi] = stream_range(opt.samples, opt.streams, s);
    parts[s] = monte_carlo_stream(stat, n, hi - lo, opt.seed, s);
  };
  int workers = std::max(1, std::min(opt.workers, opt.streams));
  if (workers == 1) {
    for (int s = 0; s < opt.streams; ++s) run(s);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int s = w; s < opt.streams; s += workers) run(s);
      });
  }
  Moments total;
  for (auto& p : parts) total.merge(p);

  StatReport r;
  r.statistic = to_string(stat);
  r.n = n;
  r.mode = Mode::MonteCarlo;
  r.value = total.mean();
  r.stderr_value = total.standard_error();
  r.ci95 = std::pair{r.value - 1.96 * *r.stderr_value, r.value + 1.96 * *r.stderr_value};
  r.samples = opt.samples;
  r.seed = opt.seed;
  return r;
}

inline StatReport estimate_exhaustive(Statistic stat, int n, int max_n = Budget::from_environment().enumeration_max_n) {
  auto sums = exhaustive_sums(n, max_n);
  StatReport r;
  r.statistic = to_string(stat);
  r.n = n;
  r.mode = Mode::Exhaustive;
  r.exact = exhaustive_value(stat, n, sums);
  r.value = r.exact->get_d();
  r.samples = is_rooted(stat) ? sums.rooted : sums.trees;
  return r;
}

// ---------------------------------------------------------------------------
// Double enumeration behind the rooted/unrooted transfer: a node of an
// unrooted tree is deep exactly when the rooted tree obtained by choosing it
// as root has the root at distance >= 3 from the leaves of the tree.

struct BridgeReport {
  int n = 0;
  std::uint64_t sum_deep = 0;               // sum over U_n of |D(T)|
  std::uint64_t rooted_deep = 0;            // rooted trees, root >= 3 from every leaf
  std::uint64_t rooted_deep_childless = 0;  // rooted trees, root >= 3 from every childless node
  std::uint64_t sum_upsilon = 0;
  std::uint64_t sum_y = 0;                  // Y with the leaf-distance reading
  std::uint64_t sum_y_childless = 0;        // Y with the childless reading

  bool deep_identity() const { return sum_deep == rooted_deep; }
  bool upsilon_identity() const { return sum_upsilon == sum_y; }
  bool holds() const { return deep_identity() && upsilon_identity(); }
};

inline BridgeReport rooted_unrooted_bridge(int n, int max_n = Budget::from_environment().enumeration_max_n) {
  check_enumeration_budget(n, max_n);
  BridgeReport b;
  b.n = n;
  if (n < 2) return b;
  // column sums of the node-by-tree matrix
  enumerate_unrooted(
      n,
      [&](const LabeledTree& t) {
        auto p = boundary_profile(t);
        b.sum_deep += p.deep.size();
        b.sum_upsilon += static_cast<std::uint64_t>(p.upsilon);
      },
      max_n);
  // the same count organised by rooted trees, each root examined on its own
  enumerate_rooted(
      n,
      [&](const RootedTree& rt) {
        auto dist = rt.tree.distances_from(rt.root);
        std::uint64_t second = static_cast<std::uint64_t>(std::count(dist.begin() + 1, dist.end(), 2));
        if (root_leaf_distance(rt.tree, rt.root) >= 3) {
          ++b.rooted_deep;
          b.sum_y += second;
        }
        if (root_boundary_distance(rt) >= 3) {
          ++b.rooted_deep_childless;
          b.sum_y_childless += second;
        }
      },
      max_n);
  return b;
}

inline bool rooted_unrooted_bridge_check(int n, int max_n = Budget::from_environment().enumeration_max_n) {
  return rooted_unrooted_bridge(n, max_n).holds();
}

/// Brute-force rooted counts: at_least[k] = #{root boundary distance >= k},
/// height_at_most[k] = #{height <= k}, for k = 0..kmax.
struct RootedCounts {
  std::vector<std::uint64_t> at_least;
  std::vector<std::uint64_t> height_at_most;
};

inline RootedCounts exhaustive_rooted_counts(int n, int kmax, int max_n = Budget::from_environment().enumeration_max_n) {
  RootedCounts c{std::vector<std::uint64_t>(kmax + 1, 0), std::vector<std::uint64_t>(kmax + 1, 0)};
  enumerate_rooted(
      n,
      [&](const RootedTree& rt) {
        int d = root_boundary_distance(rt);
        int h = root_height(rt);
        for (int k = 0; k <= kmax; ++k) {
          if (d >= k) ++c.at_least[k];
          if (h <= k) ++c.height_at_most[k];
        }
      },
      max_n);
  return c;
}

}  // namespace raagtree
