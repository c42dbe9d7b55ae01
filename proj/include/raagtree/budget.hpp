#pragma once

#include <cstdlib>
#include <optional>
#include <string>

#include "raagtree/error.hpp"

namespace raagtree {

/// Size guards for the exhaustive and algebraic computations.
///
/// RAAGTREE_BUDGET accepts either a single integer, applied to both the
/// enumeration and the presentation node limits, or a comma list such as
/// "enumeration=10,presentation=7,series=800".
struct Budget {
  int enumeration_max_n = 9;
  int presentation_max_n = 6;
  int series_max_order = 500;
  long long max_generators = 200000;

  static Budget from_environment() {
    Budget b;
    const char* raw = std::getenv("RAAGTREE_BUDGET");
    if (raw == nullptr || *raw == '\0') return b;
    std::string s(raw);
    try {
      if (s.find('=') == std::string::npos) {
        int v = std::stoi(s);
        b.enumeration_max_n = v;
        b.presentation_max_n = v;
        return b;
      }
      std::size_t pos = 0;
      while (pos < s.size()) {
        auto comma = s.find(',', pos);
        auto item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Parse, "RAAGTREE_BUDGET item without '='");
        auto key = item.substr(0, eq);
        long long value = std::stoll(item.substr(eq + 1));
        if (key == "enumeration") b.enumeration_max_n = static_cast<int>(value);
        else if (key == "presentation") b.presentation_max_n = static_cast<int>(value);
        else if (key == "series") b.series_max_order = static_cast<int>(value);
        else if (key == "generators") b.max_generators = value;
        else throw Error(ErrorKind::Parse, "unknown RAAGTREE_BUDGET key '" + key + "'");
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::Parse, "RAAGTREE_BUDGET is not numeric: " + s);
    } catch (const std::out_of_range&) {
      throw Error(ErrorKind::Parse, "RAAGTREE_BUDGET out of range: " + s);
    }
    return b;
  }
};

}  // namespace raagtree
