#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace raagtree {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

struct Constant {
  std::string name;
  BigFloat value;
  int digits = 100;  // significant decimal digits carried

  std::string to_string(int shown) const {
    std::ostringstream out;
    out.precision(shown);
    out << std::fixed << value;
    return out.str();
  }
};

/// Limiting constants of the deep-root statistics.
///
///   c3               lim P(root >= 3 from every childless node)
///   d3               lim E(N | that event)
///   exp_minus_inv_e  lim P(root >= 2 from every childless node)
///
/// The remaining entries are the limits of the unrooted statistics: the
/// rooted event above also contains roots of degree one (a root with a single
/// child), whose limiting mass e^{-1-1/e} (and (2 - 1/e) e^{-1-1/e} for the
/// second generation) drops out when the root is required to be a deep node.
inline std::vector<Constant> constants() {
  using boost::multiprecision::exp;
  const BigFloat e = exp(BigFloat(1));
  const BigFloat inv_e = 1 / e;
  const BigFloat c3 = inv_e * exp(-inv_e) * exp((exp(1 - inv_e) - 1) / e);
  const BigFloat d3 = 2 - inv_e + inv_e * (1 - inv_e) * exp(1 - inv_e);
  const BigFloat leaf_root = exp(-1 - inv_e);
  return {
      {"c3", c3},
      {"d3", d3},
      {"exp_minus_inv_e", exp(-inv_e)},
      {"c3_times_d3", c3 * d3},
      {"deep_fraction_limit", c3 - leaf_root},
      {"upsilon_per_node_limit", c3 * d3 - (2 - inv_e) * leaf_root},
  };
}

inline BigFloat constant(const std::string& name) {
  for (auto& c : constants())
    if (c.name == name) return c.value;
  return BigFloat(0);
}

}  // namespace raagtree
