// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stlmon/expr.hpp"

namespace stlmon {

/// Closed time interval attached to a temporal operator, in time units.
struct TimeInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Atomic proposition in canonical "expr > 0" form. The id is assigned in
/// parse order and is dense from 0 within one formula. r_min/r_max are the
/// a-priori robustness bounds; they default to -inf/+inf and are tightened
/// from domain knowledge when available.
struct Atom {
  int id = -1;
  ExprPtr expr;
  double r_min = -kInf;
  double r_max = kInf;
};

enum class FormulaKind {
  Atom,
  FalseConst,
  Not,
  And,
  Or,
  Always,
  Eventually,
  Until,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula tree. Intervals are bounded by construction; implication
/// never appears (it is rewritten away when parsing), and truth is not(false).
struct Formula {
  FormulaKind kind = FormulaKind::FalseConst;
  Atom atom;               // Atom
  TimeInterval interval;   // Always / Eventually / Until
  FormulaPtr left;         // first child
  FormulaPtr right;        // second child (And / Or / Until)

  static FormulaPtr make_atom(Atom a);
  static FormulaPtr false_const();
  static FormulaPtr true_const();  // not(false)
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr conjunction(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disjunction(FormulaPtr a, FormulaPtr b);
  static FormulaPtr always(TimeInterval i, FormulaPtr f);
  static FormulaPtr eventually(TimeInterval i, FormulaPtr f);
  static FormulaPtr until(TimeInterval i, FormulaPtr a, FormulaPtr b);
};

/// Future reach of a formula beyond its anchor instant, in time units.
/// horizon(atom) = 0, horizon(op_I f) = hi(I) + horizon(f),
/// horizon(a U_I b) = hi(I) + max(horizon(a), horizon(b)).
double horizon(const Formula& f);

/// All atom occurrences in id order (dense from 0).
std::vector<Atom> atoms(const Formula& f);

bool formula_equal(const Formula& a, const Formula& b);

/// Concrete-syntax renderer; parse(print(f)) reproduces f including atom ids.
std::string print_formula(const Formula& f);

}  // namespace stlmon
