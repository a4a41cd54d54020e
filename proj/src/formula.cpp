// SPDX-License-Identifier: Apache-2.0
#include "stlmon/formula.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

namespace stlmon {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

FormulaPtr Formula::make_atom(Atom a) {
  Formula f;
  f.kind = FormulaKind::Atom;
  f.atom = std::move(a);
  return make(std::move(f));
}

FormulaPtr Formula::false_const() {
  Formula f;
  f.kind = FormulaKind::FalseConst;
  return make(std::move(f));
}

FormulaPtr Formula::true_const() { return negation(false_const()); }

FormulaPtr Formula::negation(FormulaPtr x) {
  Formula f;
  f.kind = FormulaKind::Not;
  f.left = std::move(x);
  return make(std::move(f));
}

FormulaPtr Formula::conjunction(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = FormulaKind::And;
  f.left = std::move(a);
  f.right = std::move(b);
  return make(std::move(f));
}

FormulaPtr Formula::disjunction(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = FormulaKind::Or;
  f.left = std::move(a);
  f.right = std::move(b);
  return make(std::move(f));
}

FormulaPtr Formula::always(TimeInterval i, FormulaPtr x) {
  Formula f;
  f.kind = FormulaKind::Always;
  f.interval = i;
  f.left = std::move(x);
  return make(std::move(f));
}

FormulaPtr Formula::eventually(TimeInterval i, FormulaPtr x) {
  Formula f;
  f.kind = FormulaKind::Eventually;
  f.interval = i;
  f.left = std::move(x);
  return make(std::move(f));
}

FormulaPtr Formula::until(TimeInterval i, FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = FormulaKind::Until;
  f.interval = i;
  f.left = std::move(a);
  f.right = std::move(b);
  return make(std::move(f));
}

double horizon(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Atom:
    case FormulaKind::FalseConst:
      return 0.0;
    case FormulaKind::Not:
      return horizon(*f.left);
    case FormulaKind::And:
    case FormulaKind::Or:
      return std::max(horizon(*f.left), horizon(*f.right));
    case FormulaKind::Always:
    case FormulaKind::Eventually:
      return f.interval.hi + horizon(*f.left);
    case FormulaKind::Until:
      return f.interval.hi + std::max(horizon(*f.left), horizon(*f.right));
  }
  return 0.0;
}

namespace {

void collect_atoms(const Formula& f, std::vector<Atom>& out) {
  switch (f.kind) {
    case FormulaKind::Atom:
      out.push_back(f.atom);
      return;
    case FormulaKind::FalseConst:
      return;
    case FormulaKind::Not:
    case FormulaKind::Always:
    case FormulaKind::Eventually:
      collect_atoms(*f.left, out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Until:
      collect_atoms(*f.left, out);
      collect_atoms(*f.right, out);
      return;
  }
}

// Printer precedence, loosest first: or 0, and 1, until 2, prefix ops 3.
int formula_prec(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Or:
      return 0;
    case FormulaKind::And:
      return 1;
    case FormulaKind::Until:
      return 2;
    default:
      return 3;
  }
}

void print_rec(const Formula& f, std::string& out) {
  auto child = [&out](const Formula& c, int min_prec) {
    if (formula_prec(c) < min_prec) {
      out += '(';
      print_rec(c, out);
      out += ')';
    } else {
      print_rec(c, out);
    }
  };
  switch (f.kind) {
    case FormulaKind::Atom:
      out += print_expr(*f.atom.expr);
      out += " > 0";
      return;
    case FormulaKind::FalseConst:
      out += "false";
      return;
    case FormulaKind::Not:
      out += "not ";
      child(*f.left, 3);
      return;
    case FormulaKind::And:
      child(*f.left, 1);
      out += " and ";
      child(*f.right, 2);
      return;
    case FormulaKind::Or:
      child(*f.left, 0);
      out += " or ";
      child(*f.right, 1);
      return;
    case FormulaKind::Always:
      out += "alw_[" + format_double(f.interval.lo) + "," +
             format_double(f.interval.hi) + "] ";
      child(*f.left, 3);
      return;
    case FormulaKind::Eventually:
      out += "ev_[" + format_double(f.interval.lo) + "," +
             format_double(f.interval.hi) + "] ";
      child(*f.left, 3);
      return;
    case FormulaKind::Until:
      child(*f.left, 3);
      out += " until_[" + format_double(f.interval.lo) + "," +
             format_double(f.interval.hi) + "] ";
      child(*f.right, 3);
      return;
  }
}

}  // namespace

std::vector<Atom> atoms(const Formula& f) {
  std::vector<Atom> out;
  collect_atoms(f, out);
  std::sort(out.begin(), out.end(),
            [](const Atom& a, const Atom& b) { return a.id < b.id; });
  return out;
}

bool formula_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case FormulaKind::Atom:
      return a.atom.id == b.atom.id && expr_equal(*a.atom.expr, *b.atom.expr);
    case FormulaKind::FalseConst:
      return true;
    case FormulaKind::Not:
      return formula_equal(*a.left, *b.left);
    case FormulaKind::And:
    case FormulaKind::Or:
      return formula_equal(*a.left, *b.left) && formula_equal(*a.right, *b.right);
    case FormulaKind::Always:
    case FormulaKind::Eventually:
      return a.interval.lo == b.interval.lo && a.interval.hi == b.interval.hi &&
             formula_equal(*a.left, *b.left);
    case FormulaKind::Until:
      return a.interval.lo == b.interval.lo && a.interval.hi == b.interval.hi &&
             formula_equal(*a.left, *b.left) && formula_equal(*a.right, *b.right);
  }
  return false;
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

}  // namespace stlmon
