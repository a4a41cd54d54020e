// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>

#include "stlmon/expr.hpp"

namespace stlmon {

/// Reachable-robustness interval [lower, upper] over extended reals.
/// -[l,u] = [-u,-l]; min and max act componentwise.
struct RobustnessInterval {
  double lower = -kInf;
  double upper = kInf;

  friend bool operator==(const RobustnessInterval&,
                         const RobustnessInterval&) = default;
};

inline RobustnessInterval iv_point(double v) { return {v, v}; }

inline RobustnessInterval iv_neg(RobustnessInterval a) {
  return {-a.upper, -a.lower};
}

inline RobustnessInterval iv_min(RobustnessInterval a, RobustnessInterval b) {
  return {std::min(a.lower, b.lower), std::min(a.upper, b.upper)};
}

inline RobustnessInterval iv_max(RobustnessInterval a, RobustnessInterval b) {
  return {std::max(a.lower, b.lower), std::max(a.upper, b.upper)};
}

/// Three-valued online verdict.
enum class Verdict { True, False, Unknown };

/// Sign rules: upper < 0 -> False, lower > 0 -> True, else Unknown.
/// An endpoint exactly at zero stays Unknown.
inline Verdict derive_verdict(RobustnessInterval i) {
  if (i.upper < 0.0) return Verdict::False;
  if (i.lower > 0.0) return Verdict::True;
  return Verdict::Unknown;
}

const char* verdict_name(Verdict v);

}  // namespace stlmon
