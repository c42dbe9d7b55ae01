// Command-line front end: tree invariants, statistics, series, b1 and the
// verification suites. Output is JSON lines, first line the effective config.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "raagtree/raagtree.hpp"
#include "raagtree/verify.hpp"

using namespace raagtree;
using nlohmann::json;

namespace {

struct Global {
  std::string format = "json";
  bool no_timestamp = false;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::uint64_t seed = 1;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

class Output {
 public:
  explicit Output(const Global& g) : g_(g) {}

  void header(const std::string& sub, json config) {
    config["subcommand"] = sub;
    config["format"] = g_.format;
    config["workers"] = g_.workers;
    Budget b = Budget::from_environment();
    config["budget"] = {{"enumeration", b.enumeration_max_n}, {"presentation", b.presentation_max_n},
                        {"series", b.series_max_order}, {"generators", b.max_generators}};
    json h = {{"config", config}};
    if (!g_.no_timestamp) h["timestamp"] = static_cast<long long>(std::time(nullptr));
    if (g_.format == "csv")
      std::cout << "# " << h.dump() << "\n";
    else
      emit(h);
  }

  void emit(const json& j) {
    if (g_.format == "text") {
      for (auto& [k, v] : j.items()) std::cout << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      std::cout << "\n";
    } else if (g_.format == "csv") {
      if (!csv_header_) {
        bool first = true;
        for (auto& [k, v] : j.items()) std::cout << (first ? "" : ",") << k, first = false;
        std::cout << "\n";
        csv_header_ = true;
      }
      bool first = true;
      for (auto& [k, v] : j.items()) std::cout << (first ? "" : ",") << csv_cell(v.is_string() ? v.get<std::string>() : v.dump()), first = false;
      std::cout << "\n";
    } else {
      std::cout << j.dump() << "\n";
    }
    std::cout.flush();
  }

  // CSV output is for tabular records; the header line stays JSON.
  void emit_record(const json& j) { emit(j); }
  void emit_meta(const json& j) {
    if (g_.format == "csv") return;
    emit(j);
  }

 private:
  const Global& g_;
  bool csv_header_ = false;
};

json report_json(const StatReport& r) {
  json j = {{"statistic", r.statistic}, {"n", r.n}, {"mode", to_string(r.mode)}, {"value", r.value}, {"samples", r.samples}};
  j["exact"] = r.exact ? json(r.exact->get_str()) : json(nullptr);
  j["stderr"] = r.stderr_value ? json(*r.stderr_value) : json(nullptr);
  j["ci95"] = r.ci95 ? json::array({r.ci95->first, r.ci95->second}) : json(nullptr);
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  return j;
}

json invariants_json(const LabeledTree& t) {
  auto p = boundary_profile(t);
  json dist = json::array();
  for (int v = 1; v <= t.size(); ++v) dist.push_back(p.to_boundary[v]);
  return {{"n", t.size()},
          {"deep", p.deep},
          {"upsilon", p.upsilon},
          {"shallow", p.shallow},
          {"betti_lower_bound", p.upsilon},
          {"distance_to_boundary", dist},
          {"sim_classes", nontrivial_sim_classes(t)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"raagtree: trees, RAAG automorphisms and tree statistics"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--format", g.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--no-timestamp", g.no_timestamp, "omit the timestamp from the header");
  app.add_option("--workers", g.workers, "worker threads for sampling")->check(CLI::PositiveNumber);

  std::string input;
  auto* inv = app.add_subcommand("invariants", "deep nodes, Upsilon and the preorder classes of a tree");
  inv->add_option("--input", input, "tree file")->required();

  int n = 0;
  std::string stat_name = "deep-fraction";
  bool all_stats = false;
  auto* en = app.add_subcommand("enumerate", "exact statistics over all labeled trees");
  en->add_option("--n", n, "number of nodes")->required();
  en->add_option("--statistic", stat_name, "statistic name");
  en->add_flag("--all-statistics", all_stats, "every statistic");
  bool bridge = false;
  en->add_flag("--bridge", bridge, "also report the rooted/unrooted double count");

  std::uint64_t samples = 100000;
  int streams = 16;
  auto* sa = app.add_subcommand("sample", "Monte Carlo estimate from uniform random trees");
  sa->add_option("--n", n, "number of nodes")->required();
  sa->add_option("--statistic", stat_name, "statistic name");
  sa->add_option("--samples", samples, "sample count");
  sa->add_option("--seed", g.seed, "seed");
  sa->add_option("--streams", streams, "fixed stream partition")->check(CLI::PositiveNumber);

  int psi_k = -1, phi_k = -1;
  bool limits = false;
  auto* ex = app.add_subcommand("exact", "exact values from the generating functions");
  ex->add_option("--n", n, "number of nodes / coefficient index");
  ex->add_option("--statistic", stat_name, "statistic name");
  ex->add_option("--psi", psi_k, "print n! coef_n Psi_k");
  ex->add_option("--phi", phi_k, "print n! coef_n Phi_k");
  ex->add_flag("--limit-report", limits, "claimed limits against exact values");

  int digits = 30;
  auto* co = app.add_subcommand("constants", "limiting constants");
  co->add_option("--digits", digits, "decimal digits")->check(CLI::Range(1, 90));

  int max_nodes = Budget::from_environment().presentation_max_n;
  std::string emit_matrix, verify_mode = "representatives";
  auto* be = app.add_subcommand("betti", "b1 of Aut*(A_T) from the abelianized presentation");
  be->add_option("--input", input, "tree file")->required();
  be->add_option("--max-nodes", max_nodes, "presentation budget");
  be->add_option("--emit-matrix", emit_matrix, "write the relator matrix here");
  be->add_option("--verify", verify_mode, "relator checks: all | representatives | none")
      ->check(CLI::IsMember({"all", "representatives", "none"}));

  std::string suite = "all";
  VerifyOptions vo;
  auto* ve = app.add_subcommand("verify", "verification suites");
  ve->add_option("--suite", suite, "series | enumeration | relators | homology | montecarlo | all")
      ->check(CLI::IsMember({"series", "enumeration", "relators", "homology", "montecarlo", "all"}));
  ve->add_option("--max-n", vo.max_n, "largest n for exhaustive checks");
  ve->add_option("--relator-max-n", vo.relator_max_n, "largest n for full relator verification");
  ve->add_option("--homology-max-n", vo.homology_max_n, "largest n for b1 checks");
  ve->add_option("--mc-reps", vo.montecarlo_reps, "Monte Carlo repetitions");
  ve->add_option("--mc-samples", vo.montecarlo_samples, "samples per repetition");
  ve->add_option("--seed", vo.seed, "base seed");
  bool skip_path7 = false;
  ve->add_flag("--skip-path7", skip_path7, "leave out the Betti bound on the 7-path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Output out(g);
  try {
    if (*inv) {
      auto t = read_tree_file(input);
      out.header("invariants", {{"input", input}});
      out.emit_record(invariants_json(t));
      return 0;
    }
    if (*en) {
      out.header("enumerate", {{"n", n}, {"statistic", all_stats ? "all" : stat_name}, {"bridge", bridge}});
      auto budget = Budget::from_environment().enumeration_max_n;
      auto sums = exhaustive_sums(n, budget);
      std::vector<Statistic> stats;
      if (all_stats)
        stats = {Statistic::DeepFraction, Statistic::UpsilonPerNode, Statistic::ProbRootDeep, Statistic::MeanY,
                 Statistic::MeanNGivenDeep};
      else
        stats = {parse_statistic(stat_name)};
      for (auto st : stats) {
        StatReport r;
        r.statistic = to_string(st);
        r.n = n;
        r.mode = Mode::Exhaustive;
        r.samples = is_rooted(st) ? sums.rooted : sums.trees;
        try {
          r.exact = exhaustive_value(st, n, sums);
          r.value = r.exact->get_d();
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::DivByZero || !all_stats) throw;
          r.value = std::nan("");
        }
        out.emit_record(report_json(r));
      }
      if (bridge) {
        auto b = rooted_unrooted_bridge(n, budget);
        out.emit_meta({{"bridge", {{"sum_deep", b.sum_deep}, {"rooted_deep", b.rooted_deep},
                                   {"rooted_deep_childless", b.rooted_deep_childless}, {"sum_upsilon", b.sum_upsilon},
                                   {"sum_y", b.sum_y}, {"sum_y_childless", b.sum_y_childless}, {"holds", b.holds()}}}});
        return b.holds() ? 0 : 1;
      }
      return 0;
    }
    if (*sa) {
      auto st = parse_statistic(stat_name);
      out.header("sample", {{"n", n}, {"statistic", stat_name}, {"samples", samples}, {"seed", g.seed}, {"streams", streams}});
      EstimateOptions opt;
      opt.montecarlo = {samples, g.seed, streams, g.workers};
      out.emit_record(report_json(estimate(st, n, Mode::MonteCarlo, opt)));
      return 0;
    }
    if (*ex) {
      out.header("exact", {{"n", n}, {"statistic", stat_name}, {"psi", psi_k}, {"phi", phi_k}, {"limit_report", limits}});
      if (limits) {
        auto rep = limit_report();
        for (auto& s : to_json(rep)) out.emit_record(s);
        return 0;
      }
      if (n < 1) throw Error(ErrorKind::BadLabel, "--n is required");
      auto budget = Budget::from_environment().series_max_order;
      check_series_budget(n, budget);
      if (psi_k >= 0 || phi_k >= 0) {
        if (psi_k >= 0)
          out.emit_record({{"series", "psi"}, {"k", psi_k}, {"n", n}, {"labelled_count", psi_counts(psi_k, n)[n].get_str()}});
        if (phi_k >= 0)
          out.emit_record({{"series", "phi"}, {"k", phi_k}, {"n", n}, {"labelled_count", phi_counts(phi_k, n)[n].get_str()}});
        return 0;
      }
      EstimateOptions opt;
      out.emit_record(report_json(estimate(parse_statistic(stat_name), n, Mode::ExactSeries, opt)));
      return 0;
    }
    if (*co) {
      out.header("constants", {{"digits", digits}});
      json j;
      for (auto& c : constants()) j[c.name] = c.to_string(digits);
      out.emit_record(j);
      return 0;
    }
    if (*be) {
      auto t = read_tree_file(input);
      out.header("betti", {{"input", input}, {"max_nodes", max_nodes}, {"verify", verify_mode}, {"emit_matrix", emit_matrix}});
      PresentationOptions opt;
      opt.max_nodes = max_nodes;
      opt.verify = verify_mode == "all" ? Verify::All : verify_mode == "none" ? Verify::None : Verify::Representatives;
      check_presentation_budget(t.size(), max_nodes);
      auto P = build_presentation(t, opt);
      json counts = json::object();
      for (auto& [s, tl] : P.tally)
        counts[to_string(s)] = {{"instances", tl.instances}, {"distinct_rows", tl.distinct_rows}, {"zero_rows", tl.zero_rows},
                                {"verified", tl.verified}, {"failures", tl.failures}, {"invalid", tl.invalid}};
      out.emit_meta({{"presentation", {{"generators", P.columns()}, {"type2", P.type2.size()}, {"type1", P.type1.size()},
                                        {"raw_type2", P.raw_type2}, {"rows", P.rows.size()}, {"relators", counts}}}});
      if (!emit_matrix.empty()) {
        std::ofstream f(emit_matrix);
        if (!f) throw Error(ErrorKind::Parse, "cannot write " + emit_matrix);
        write_matrix(f, P);
      }
      auto L = relator_lattice(P);
      auto h = betti_one(P, L);
      auto j = to_json(h);
      auto p = boundary_profile(t);
      j["upsilon"] = p.upsilon;
      j["betti_bound_holds"] = h.b1 >= p.upsilon;
      out.emit_record(j);
      return (h.failures == 0 && h.rank_cross_checked && h.b1 >= p.upsilon) ? 0 : 1;
    }
    if (*ve) {
      vo.workers = g.workers;
      vo.homology_path7 = !skip_path7;
      out.header("verify", {{"suite", suite}, {"max_n", vo.max_n}, {"relator_max_n", vo.relator_max_n},
                            {"homology_max_n", vo.homology_max_n}, {"mc_reps", vo.montecarlo_reps},
                            {"mc_samples", vo.montecarlo_samples}, {"seed", vo.seed}, {"path7", vo.homology_path7}});
      bool ok = run_suite(parse_suite(suite), vo, [&](const Check& c) {
        json j = {{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}};
        if (!g.no_timestamp) j["seconds"] = c.seconds;
        out.emit(j);
      });
      out.emit({{"suite", suite}, {"passed", ok}});
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  }
  return 2;
}
