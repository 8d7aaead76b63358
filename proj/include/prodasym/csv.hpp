// CSV serialization helpers: deterministic 17-significant-digit numbers.
#pragma once

#include <cstdio>
#include <string>

#include "prodasym/moments.hpp"
#include "prodasym/radial.hpp"

namespace prodasym {

/// Shortest-faithful fixed serialization: 17 significant digits round-trip
/// any double bit-exactly.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline constexpr const char* moment_summary_csv_header =
    "r,t,m,sigma2,gamma3,sup_var_ratio,truncation_k,tail_bound";

inline std::string to_csv_row(const MomentSummary& ms, RadialParam rp) {
  return fmt17(rp.r) + "," + fmt17(rp.t) + "," + fmt17(ms.m) + "," + fmt17(ms.sigma2) +
         "," + fmt17(ms.gamma3) + "," + fmt17(ms.sup_var_ratio) + "," +
         std::to_string(ms.truncation_k) + "," + fmt17(ms.tail_bound);
}

}  // namespace prodasym
