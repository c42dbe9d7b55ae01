#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <vector>

#include "raagtree/budget.hpp"
#include "raagtree/constants.hpp"
#include "raagtree/egf.hpp"
#include "raagtree/enumerate.hpp"

namespace raagtree {

struct EstimateOptions {
  Budget budget = Budget::from_environment();
  MonteCarloOptions montecarlo;
};

inline mpq_class series_value(Statistic stat, int n, const RootStatisticsTable& t) {
  switch (stat) {
    case Statistic::DeepFraction: return t.deep_fraction(n);
    case Statistic::UpsilonPerNode: return t.upsilon_per_node(n);
    case Statistic::ProbRootDeep: return t.prob_root_deep(n);
    case Statistic::MeanY: return t.mean_Y(n);
    case Statistic::MeanNGivenDeep: return t.mean_N_given_deep(n);
  }
  return 0;
}

inline StatReport estimate_exact_series(Statistic stat, int n, int max_order) {
  RootStatisticsTable table(n, max_order);
  StatReport r;
  r.statistic = to_string(stat);
  r.n = n;
  r.mode = Mode::ExactSeries;
  r.exact = series_value(stat, n, table);
  r.value = r.exact->get_d();
  return r;
}

inline StatReport estimate(Statistic stat, int n, Mode mode, const EstimateOptions& opt = {}) {
  if (n < 1) throw Error(ErrorKind::BadLabel, "n must be positive");
  switch (mode) {
    case Mode::Exhaustive: return estimate_exhaustive(stat, n, opt.budget.enumeration_max_n);
    case Mode::MonteCarlo:
      if (n < 2) throw Error(ErrorKind::TooSmall, "sampling needs n >= 2");
      return estimate_monte_carlo(stat, n, opt.montecarlo);
    case Mode::ExactSeries: return estimate_exact_series(stat, n, opt.budget.series_max_order);
  }
  return {};
}

/// One candidate limit for a statistic and how far the data sit from it.
struct Candidate {
  std::string name;
  double value = 0.0;
  double gap_first = 0.0;  // |value(first n) - candidate|
  double gap_last = 0.0;   // |value(last n) - candidate|
  bool approached = false; // gap shrinks along the whole sequence
};

struct LimitPoint {
  int n = 0;
  std::string mode;
  mpq_class value;
};

struct LimitSeries {
  std::string statistic;
  std::vector<LimitPoint> points;
  std::vector<Candidate> candidates;
  std::string supported;  // closest candidate that the sequence approaches monotonically
};

inline LimitSeries limit_series(Statistic stat, const std::vector<std::pair<std::string, double>>& candidates,
                                int exhaustive_max, const std::vector<int>& series_orders, const RootStatisticsTable& table,
                                const std::vector<ExhaustiveSums>& sums) {
  LimitSeries s;
  s.statistic = to_string(stat);
  for (int n = 2; n <= exhaustive_max; ++n) {
    if (stat == Statistic::MeanNGivenDeep && sums[n].root_deep == 0) continue;
    s.points.push_back({n, "exhaustive", exhaustive_value(stat, n, sums[n])});
  }
  for (int n : series_orders) s.points.push_back({n, "exact-series", series_value(stat, n, table)});
  // the trend is judged on the series points, which reach far larger n
  std::vector<double> tail;
  for (auto& p : s.points)
    if (p.mode == "exact-series") tail.push_back(p.value.get_d());
  double best = INFINITY;
  for (auto& [name, v] : candidates) {
    Candidate c{name, v};
    c.gap_first = std::abs(tail.front() - v);
    c.gap_last = std::abs(tail.back() - v);
    c.approached = true;
    for (std::size_t i = 1; i < tail.size(); ++i)
      if (std::abs(tail[i] - v) >= std::abs(tail[i - 1] - v)) c.approached = false;
    if (c.approached && c.gap_last < best) {
      best = c.gap_last;
      s.supported = name;
    }
    s.candidates.push_back(c);
  }
  return s;
}

/// The limits claimed for the unrooted and rooted second-generation
/// statistics, checked against exact values. For (1/n) E'(Υ) the candidates
/// are d3, c3·d3 and the value from the unrooted series.
struct LimitReport {
  std::vector<LimitSeries> series;
};

inline LimitReport limit_report(int exhaustive_max = 8, std::vector<int> series_orders = {50, 100, 200, 400},
                                int max_order = Budget::from_environment().series_max_order) {
  int top = 0;
  for (int n : series_orders) top = std::max(top, n);
  RootStatisticsTable table(top, max_order);
  std::vector<ExhaustiveSums> sums(exhaustive_max + 1);
  for (int n = 2; n <= exhaustive_max; ++n) sums[n] = exhaustive_sums(n, exhaustive_max);
  const double c3 = constant("c3").convert_to<double>();
  const double d3 = constant("d3").convert_to<double>();
  const double c3d3 = constant("c3_times_d3").convert_to<double>();
  const double df = constant("deep_fraction_limit").convert_to<double>();
  const double up = constant("upsilon_per_node_limit").convert_to<double>();
  LimitReport rep;
  rep.series.push_back(limit_series(Statistic::UpsilonPerNode, {{"d3", d3}, {"c3*d3", c3d3}, {"unrooted_limit", up}},
                                    exhaustive_max, series_orders, table, sums));
  rep.series.push_back(limit_series(Statistic::MeanY, {{"d3", d3}, {"c3*d3", c3d3}}, exhaustive_max, series_orders, table, sums));
  rep.series.push_back(limit_series(Statistic::MeanNGivenDeep, {{"d3", d3}, {"c3*d3", c3d3}}, exhaustive_max, series_orders, table, sums));
  rep.series.push_back(limit_series(Statistic::ProbRootDeep, {{"c3", c3}}, exhaustive_max, series_orders, table, sums));
  rep.series.push_back(limit_series(Statistic::DeepFraction, {{"c3", c3}, {"unrooted_limit", df}}, exhaustive_max, series_orders, table, sums));
  return rep;
}

}  // namespace raagtree
