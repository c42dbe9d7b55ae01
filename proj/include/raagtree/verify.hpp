#pragma once

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "raagtree/raagtree.hpp"

namespace raagtree {

using nlohmann::json;

struct Check {
  std::string name;
  bool passed = false;
  json detail = json::object();
  double seconds = 0.0;
};

struct VerifyOptions {
  int max_n = 8;                   // enumeration-based checks
  int relator_max_n = 5;           // full relator verification
  int homology_max_n = 6;          // Betti bound / vanishing class
  bool homology_path7 = true;      // the Betti bound on the 7-path as well
  int montecarlo_reps = 100;
  std::uint64_t montecarlo_samples = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
  int convergence_low = 100;
  int convergence_high = 400;
};

template <class F>
Check timed(const std::string& name, F&& body) {
  Check c;
  c.name = name;
  auto t0 = std::chrono::steady_clock::now();
  body(c);
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

inline std::string str(const mpq_class& q) { return q.get_str(); }
inline std::string str(const mpz_class& z) { return z.get_str(); }

/// Exhaustive tree counts against n^(n-2) and n^(n-1).
inline Check check_cayley_counts(int max_n) {
  return timed("cayley-counts", [&](Check& c) {
    c.passed = true;
    for (int n = 1; n <= max_n; ++n) {
      std::uint64_t u = 0, r = 0;
      enumerate_unrooted(n, [&](const LabeledTree&) { ++u; }, max_n);
      enumerate_rooted(n, [&](const RootedTree&) { ++r; }, max_n);
      bool ok = u == unrooted_count(n) && r == rooted_count(n) && (n < 2 || u == ipow(n, n - 2));
      c.detail[std::to_string(n)] = {{"unrooted", u}, {"rooted", r}, {"ok", ok}};
      c.passed = c.passed && ok;
    }
  });
}

/// n! coef_n[Psi_k] and n! coef_n[Phi_k] against brute-force rooted counts.
inline Check check_psi_phi_oracle(int max_n, int kmax = 4) {
  return timed("psi-phi-oracle", [&](Check& c) {
    c.passed = true;
    std::vector<TruncatedSeries> psis, phis;
    for (int k = 0; k <= kmax; ++k) psis.push_back(psi(k, max_n)), phis.push_back(phi(k, max_n));
    for (int n = 1; n <= max_n; ++n) {
      auto counts = exhaustive_rooted_counts(n, kmax, max_n);
      json row = json::array();
      for (int k = 0; k <= kmax; ++k) {
        mpq_class ps = psis[k][n] * mpq_class(factorial(n)), ph = phis[k][n] * mpq_class(factorial(n));
        bool ok = ps == mpq_class(mpz_class(std::to_string(counts.at_least[k]))) &&
                  ph == mpq_class(mpz_class(std::to_string(counts.height_at_most[k])));
        row.push_back({{"k", k}, {"psi", str(ps)}, {"brute_psi", counts.at_least[k]}, {"phi", str(ph)},
                       {"brute_phi", counts.height_at_most[k]}, {"ok", ok}});
        c.passed = c.passed && ok;
      }
      c.detail[std::to_string(n)] = row;
    }
  });
}

/// Closed forms of Psi_2 and Psi_3, the coefficient formula for T^k (also by
/// Lagrange inversion), and the Stirling identities.
inline Check check_closed_forms(int psi_order = 60, int coef_max_n = 30, int stirling_order = 20) {
  return timed("closed-forms", [&](Check& c) {
    bool psi2 = psi(2, psi_order) == psi2_closed_form(psi_order);
    bool psi3 = psi(3, psi_order) == psi3_closed_form(psi_order);
    bool fixed = cayley_T(psi_order) == cayley_T_fixed_point(psi_order);
    bool coef = true, lagrange = true;
    auto T = cayley_T(coef_max_n);
    auto ez = exp(TruncatedSeries::z(coef_max_n));
    auto Tk = TruncatedSeries::constant(1, coef_max_n);
    for (int k = 1; k <= coef_max_n; ++k) {
      Tk *= T;
      for (int n = k; n <= coef_max_n; ++n) {
        if (Tk[n] != cayley_power_coef(n, k)) coef = false;
        if (k <= 6 && lagrange_coef(TruncatedSeries::monomial(k, coef_max_n), ez, n) != cayley_power_coef(n, k))
          lagrange = false;
      }
    }
    auto st = stirling_identities(stirling_order);
    c.detail = {{"psi2_closed_form", psi2}, {"psi3_closed_form", psi3}, {"T_fixed_point", fixed},
                {"coef_T_power", coef}, {"lagrange_T_power", lagrange},
                {"stirling", {{"column_egf", st.column_egf}, {"compositions", st.compositions},
                              {"double_sum", st.double_sum}, {"first_derivative", st.first_derivative},
                              {"second_derivative", st.second_derivative}}}};
    c.passed = psi2 && psi3 && fixed && coef && lagrange && st.all();
  });
}

/// The quoted decimals of c3, d3 and e^{-1/e}.
inline Check check_constants() {
  return timed("constants", [&](Check& c) {
    auto close = [](const std::string& name, double quoted, int decimals) {
      double v = constant(name).convert_to<double>();
      return std::abs(v - quoted) < 0.5 * std::pow(10.0, -decimals) ;
    };
    bool c3 = close("c3", 0.3522, 4), d3 = close("d3", 2.070, 3), e = close("exp_minus_inv_e", 0.6922, 4);
    for (auto& k : constants()) c.detail[k.name] = k.to_string(30);
    c.detail["matches"] = {{"c3", c3}, {"d3", d3}, {"exp_minus_inv_e", e}};
    c.passed = c3 && d3 && e;
  });
}

/// Pinned gaps at n = 100 and n = 400 (from the exact series); the
/// sequences must move toward their limits and match these gaps to 0.1%.
struct ConvergencePins {
  static constexpr double prob_root_deep_100 = 3.2255e-3;
  static constexpr double prob_root_deep_400 = 8.0741e-4;
  static constexpr double mean_n_100 = 7.0399e-2;
  static constexpr double mean_n_400 = 1.7832e-2;
};

inline Check check_convergence(int low, int high, int max_order = Budget::from_environment().series_max_order) {
  return timed("convergence", [&](Check& c) {
    RootStatisticsTable t(high, max_order);
    const double c3 = constant("c3").convert_to<double>(), d3 = constant("d3").convert_to<double>();
    double p_lo = std::abs(t.prob_root_deep(low).get_d() - c3), p_hi = std::abs(t.prob_root_deep(high).get_d() - c3);
    double n_lo = std::abs(t.mean_N_given_deep(low).get_d() - d3), n_hi = std::abs(t.mean_N_given_deep(high).get_d() - d3);
    bool pinned = true;
    if (low == 100 && high == 400) {
      auto near = [](double x, double pin) { return std::abs(x / pin - 1) <= 1e-3; };
      pinned = near(p_lo, ConvergencePins::prob_root_deep_100) && near(p_hi, ConvergencePins::prob_root_deep_400) &&
               near(n_lo, ConvergencePins::mean_n_100) && near(n_hi, ConvergencePins::mean_n_400);
    }
    c.detail = {{"n_low", low}, {"n_high", high},
                {"prob_root_deep", {{"low", t.prob_root_deep(low).get_d()}, {"high", t.prob_root_deep(high).get_d()},
                                    {"gap_low", p_lo}, {"gap_high", p_hi}}},
                {"mean_n_given_deep", {{"low", t.mean_N_given_deep(low).get_d()}, {"high", t.mean_N_given_deep(high).get_d()},
                                       {"gap_low", n_lo}, {"gap_high", n_hi}}},
                {"within_pinned_gaps", pinned}};
    c.passed = p_hi < p_lo && n_hi < n_lo && pinned;
  });
}

inline json to_json(const LimitReport& rep) {
  json out = json::array();
  for (auto& s : rep.series) {
    json pts = json::array();
    for (auto& p : s.points) pts.push_back({{"n", p.n}, {"mode", p.mode}, {"exact", str(p.value)}, {"value", p.value.get_d()}});
    json cands = json::array();
    for (auto& c : s.candidates)
      cands.push_back({{"name", c.name}, {"value", c.value}, {"gap_first", c.gap_first}, {"gap_last", c.gap_last},
                       {"approached", c.approached}});
    out.push_back({{"statistic", s.statistic}, {"points", pts}, {"candidates", cands}, {"supported", s.supported}});
  }
  return out;
}

/// Both claimed limits of (1/n) E'(Υ), next to the exact values. Passes
/// when the report is complete and the data single out one candidate.
inline Check check_discrepancy_report(int exhaustive_max) {
  return timed("discrepancy-report", [&](Check& c) {
    auto rep = limit_report(exhaustive_max);
    c.detail = {{"series", to_json(rep)}};
    const auto& up = rep.series.front();
    bool has_both = false, has_d3 = false;
    for (auto& k : up.candidates) has_d3 = has_d3 || k.name == "d3", has_both = has_both || k.name == "c3*d3";
    c.detail["upsilon_per_node_supported"] = up.supported;
    c.detail["mean_y_supported"] = rep.series[1].supported;
    c.detail["flag_d3"] = up.supported == "d3";
    c.detail["flag_c3_times_d3"] = up.supported == "c3*d3";
    c.passed = has_both && has_d3 && !up.supported.empty();
  });
}

/// Coverage of the exhaustive mean by 95% Monte Carlo intervals.
inline Check check_monte_carlo_coverage(int max_n, int reps, std::uint64_t samples, std::uint64_t seed, int workers) {
  return timed("montecarlo-coverage", [&](Check& c) {
    c.passed = true;
    for (int n = 2; n <= max_n; ++n) {
      auto sums = exhaustive_sums(n, max_n);
      for (Statistic st : {Statistic::DeepFraction, Statistic::UpsilonPerNode}) {
        double exact = exhaustive_value(st, n, sums).get_d();
        int covered = 0;
        for (int r = 0; r < reps; ++r) {
          MonteCarloOptions opt;
          opt.samples = samples;
          opt.seed = seed + static_cast<std::uint64_t>(r) * 1000003ULL;
          opt.workers = workers;
          auto rep = estimate_monte_carlo(st, n, opt);
          const double eps = 1e-12;
          if (rep.ci95->first - eps <= exact && exact <= rep.ci95->second + eps) ++covered;
        }
        bool ok = covered * 10 >= reps * 9;
        c.detail[std::string(to_string(st)) + "/" + std::to_string(n)] = {{"exact", exact}, {"covered", covered}, {"reps", reps}, {"ok", ok}};
        c.passed = c.passed && ok;
      }
    }
  });
}

/// Every relator instance on every labeled tree with 2 <= n <= max_n.
inline Check check_relators(int max_n) {
  return timed("relator-verification", [&](Check& c) {
    c.passed = true;
    for (int n = 2; n <= max_n; ++n) {
      std::map<Schema, SchemaReport> total;
      std::uint64_t trees = 0;
      std::vector<std::string> samples;
      enumerate_unrooted(n, [&](const LabeledTree& t) {
        ++trees;
        auto rep = verify_relators(t);
        for (auto& [s, r] : rep.schemas) {
          total[s].instances += r.instances;
          total[s].invalid += r.invalid;
          total[s].failures += r.failures;
        }
        for (auto& f : rep.failure_samples)
          if (samples.size() < 5) samples.push_back(f);
      });
      json row = {{"trees", trees}};
      for (auto& [s, r] : total) {
        row[to_string(s)] = {{"instances", r.instances}, {"failures", r.failures}, {"invalid", r.invalid}};
        c.passed = c.passed && r.failures == 0;
      }
      if (!samples.empty()) row["failure_samples"] = samples;
      c.detail[std::to_string(n)] = row;
    }
  });
}

inline json to_json(const H1Result& h) {
  json tors = json::array();
  for (auto& x : h.torsion) tors.push_back(str(x));
  return {{"n", h.n}, {"b1", h.b1}, {"torsion", tors}, {"generators", h.generators},
          {"type2_generators", h.type2_generators}, {"type1_generators", h.type1_generators},
          {"relator_instances", h.relator_instances}, {"distinct_rows", h.distinct_rows}, {"rank", h.rank},
          {"rank_cross_checked", h.rank_cross_checked}, {"verification_failures", h.failures}};
}

/// b1 >= Upsilon and the independence of Ω on every labeled tree with
/// 2 <= n <= max_n, plus the 7-path when requested.
inline Check check_betti_bound_all(int max_n, bool path7) {
  return timed("betti-bound", [&](Check& c) {
    c.passed = true;
    PresentationOptions opt;
    opt.max_nodes = std::max(max_n, path7 ? 7 : 0);
    for (int n = 2; n <= max_n; ++n) {
      std::uint64_t trees = 0, ok = 0;
      std::map<long, std::uint64_t> b1_hist;
      std::map<std::string, json> by_shape;
      std::uint64_t instances = 0;
      enumerate_unrooted(n, [&](const LabeledTree& t) {
        auto rep = check_betti_bound(t, opt);
        ++trees;
        if (rep.ok()) ++ok;
        ++b1_hist[rep.h1.b1];
        instances += rep.h1.relator_instances;
        auto key = canonical_form(t);
        if (!by_shape.count(key)) {
          auto j = to_json(rep.h1);
          j["upsilon"] = rep.upsilon;
          j["tree"] = to_text(t);
          by_shape[key] = j;
        }
      });
      json hist = json::object();
      for (auto& [b, k] : b1_hist) hist[std::to_string(b)] = k;
      json shapes = json::array();
      for (auto& [k, j] : by_shape) shapes.push_back(j);
      c.detail[std::to_string(n)] = {{"trees", trees}, {"ok", ok}, {"b1_histogram", hist}, {"relator_instances", instances},
                                     {"shapes", shapes}};
      c.passed = c.passed && ok == trees;
    }
    if (path7) {
      auto rep = check_betti_bound(path_tree(7), opt);
      auto j = to_json(rep.h1);
      j["upsilon"] = rep.upsilon;
      j["phi_kills_relators"] = rep.phi_kills_relators;
      j["omega_independent"] = rep.omega_independent;
      c.detail["path7"] = j;
      c.passed = c.passed && rep.ok();
    }
  });
}

/// b1 = 0 for every tree whose nodes are leaves or carry three leaves.
inline Check check_vanishing_class(int max_n) {
  return timed("vanishing-class", [&](Check& c) {
    c.passed = true;
    PresentationOptions opt;
    opt.max_nodes = max_n;
    std::uint64_t members = 0;
    std::map<std::string, json> shapes;
    for (int n = 2; n <= max_n; ++n)
      enumerate_unrooted(n, [&](const LabeledTree& t) {
        if (!in_vanishing_class(t)) return;
        ++members;
        auto key = canonical_form(t);
        auto it = shapes.find(key);
        if (it != shapes.end()) {
          // b1 is a relabeling invariant; one labeled copy per shape is computed
          it->second["labeled_copies"] = it->second["labeled_copies"].get<int>() + 1;
          return;
        }
        auto h = betti_one(t, opt);
        auto j = to_json(h);
        j["tree"] = to_text(t);
        j["labeled_copies"] = 1;
        shapes[key] = j;
        c.passed = c.passed && h.b1 == 0 && h.rank_cross_checked && h.failures == 0;
      });
    json arr = json::array();
    for (auto& [k, j] : shapes) arr.push_back(j);
    c.detail = {{"members", members}, {"shapes", arr}};
    c.passed = c.passed && members > 0;
  });
}

/// The elements listed by the vanishing lemma lie in the rational span of
/// the relators, on every labeled tree with 3 <= n <= max_n.
inline Check check_vanishing_lemma_all(int max_n) {
  return timed("vanishing-lemma", [&](Check& c) {
    c.passed = true;
    PresentationOptions opt;
    opt.max_nodes = max_n;
    for (int n = 3; n <= max_n; ++n) {
      std::uint64_t eligible = 0, vanishing = 0;
      std::map<std::string, bool> seen;
      enumerate_unrooted(n, [&](const LabeledTree& t) {
        auto key = canonical_form(t);
        if (seen.count(key)) return;
        seen[key] = true;
        auto P = build_presentation(t, opt);
        auto L = relator_lattice(P);
        auto rep = check_vanishing_lemma(P, L, t);
        eligible += rep.eligible;
        vanishing += rep.vanishing;
      });
      c.detail[std::to_string(n)] = {{"shapes", seen.size()}, {"eligible", eligible}, {"vanishing", vanishing}};
      c.passed = c.passed && eligible == vanishing;
    }
  });
}

/// Σ|D(T)| against rooted trees with a deep root, Σ Υ against Σ Y.
inline Check check_bridge(int max_n) {
  return timed("bridge-identity", [&](Check& c) {
    c.passed = true;
    for (int n = 1; n <= max_n; ++n) {
      auto b = rooted_unrooted_bridge(n, max_n);
      c.detail[std::to_string(n)] = {{"sum_deep", b.sum_deep}, {"rooted_deep", b.rooted_deep},
                                     {"rooted_deep_childless", b.rooted_deep_childless}, {"sum_upsilon", b.sum_upsilon},
                                     {"sum_y", b.sum_y}, {"sum_y_childless", b.sum_y_childless}, {"holds", b.holds()}};
      c.passed = c.passed && b.holds();
    }
  });
}

enum class Suite { Series, Enumeration, Relators, Homology, MonteCarlo, All };

inline Suite parse_suite(const std::string& s) {
  static const std::map<std::string, Suite> names{{"series", Suite::Series},         {"enumeration", Suite::Enumeration},
                                                  {"relators", Suite::Relators},     {"homology", Suite::Homology},
                                                  {"montecarlo", Suite::MonteCarlo}, {"all", Suite::All}};
  auto it = names.find(s);
  if (it == names.end()) throw Error(ErrorKind::Parse, "unknown suite '" + s + "'");
  return it->second;
}

/// Runs one suite; `emit` sees each check as it completes.
template <class Emit>
bool run_suite(Suite suite, const VerifyOptions& o, Emit&& emit) {
  bool ok = true;
  auto run = [&](Check c) {
    ok = ok && c.passed;
    emit(c);
  };
  const bool all = suite == Suite::All;
  if (all || suite == Suite::Series) {
    run(check_closed_forms());
    run(check_psi_phi_oracle(o.max_n));
    run(check_constants());
    run(check_convergence(o.convergence_low, o.convergence_high));
    run(check_discrepancy_report(o.max_n));
  }
  if (all || suite == Suite::Enumeration) {
    run(check_cayley_counts(o.max_n));
    run(check_bridge(o.max_n));
  }
  if (all || suite == Suite::Relators) run(check_relators(std::min(o.relator_max_n, o.max_n)));
  if (all || suite == Suite::Homology) {
    run(check_betti_bound_all(std::min(o.homology_max_n, o.max_n), o.homology_path7));
    run(check_vanishing_class(std::min(o.homology_max_n, o.max_n)));
    run(check_vanishing_lemma_all(std::min(o.homology_max_n, o.max_n)));
  }
  if (all || suite == Suite::MonteCarlo)
    run(check_monte_carlo_coverage(o.max_n, o.montecarlo_reps, o.montecarlo_samples, o.seed, o.workers));
  return ok;
}

}  // namespace raagtree
