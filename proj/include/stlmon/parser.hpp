// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stlmon/formula.hpp"

namespace stlmon {

// Grammar (one formula per spec file, UTF-8):
//
//   formula := atom | "not" formula | formula "and" formula
//            | formula "or" formula | formula "->" formula
//            | "alw_[l,u]" formula | "ev_[l,u]" formula
//            | formula "until_[l,u]" formula | "(" formula ")"
//            | "false" | "true"
//   atom    := expr cmp expr          cmp in { "<", ">" }
//   expr    := sums of products over decimals, variables, "abs(expr)"
//
// Precedence: not/alw/ev bind tightest, then until, and, or, "->".
//
// Parsing canonicalizes:
//   e < c        ->  (c - e > 0)
//   e > c        ->  (e - c > 0)
//   abs(e) < c   ->  (c - e > 0) and (c + e > 0)
//   abs(e) > c   ->  not ((c - e > 0) and (c + e > 0))
//   a -> b       ->  (not a) or b
//   true         ->  not false
//
// Atom ids are assigned left to right in parse order.
FormulaPtr parse_formula(std::string_view text,
                         const std::vector<std::string>& variables);

}  // namespace stlmon
