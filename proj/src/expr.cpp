// SPDX-License-Identifier: Apache-2.0
#include "stlmon/expr.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace stlmon {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

ExprPtr Expr::constant(double v) {
  Expr e;
  e.kind = ExprKind::Constant;
  e.value = v;
  return make(std::move(e));
}

ExprPtr Expr::variable(std::string name, int index) {
  Expr e;
  e.kind = ExprKind::Variable;
  e.name = std::move(name);
  e.var_index = index;
  return make(std::move(e));
}

ExprPtr Expr::negate(ExprPtr x) {
  // fold to a signed constant so "-3.5" and negate(3.5) are one tree
  if (x->kind == ExprKind::Constant) return constant(-x->value);
  Expr e;
  e.kind = ExprKind::Negate;
  e.lhs = std::move(x);
  return make(std::move(e));
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = ExprKind::Add;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return make(std::move(e));
}

ExprPtr Expr::sub(ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = ExprKind::Sub;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return make(std::move(e));
}

ExprPtr Expr::mul(ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = ExprKind::Mul;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return make(std::move(e));
}

ExprPtr Expr::abs(ExprPtr x) {
  Expr e;
  e.kind = ExprKind::Abs;
  e.lhs = std::move(x);
  return make(std::move(e));
}

double eval_expr(const Expr& e, std::span<const double> sample) {
  switch (e.kind) {
    case ExprKind::Constant:
      return e.value;
    case ExprKind::Variable:
      return sample[static_cast<std::size_t>(e.var_index)];
    case ExprKind::Negate:
      return -eval_expr(*e.lhs, sample);
    case ExprKind::Add:
      return eval_expr(*e.lhs, sample) + eval_expr(*e.rhs, sample);
    case ExprKind::Sub:
      return eval_expr(*e.lhs, sample) - eval_expr(*e.rhs, sample);
    case ExprKind::Mul:
      return eval_expr(*e.lhs, sample) * eval_expr(*e.rhs, sample);
    case ExprKind::Abs:
      return std::fabs(eval_expr(*e.lhs, sample));
  }
  return 0.0;
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Constant:
      return a.value == b.value;
    case ExprKind::Variable:
      return a.name == b.name && a.var_index == b.var_index;
    case ExprKind::Negate:
    case ExprKind::Abs:
      return expr_equal(*a.lhs, *b.lhs);
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
      return expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
  }
  return false;
}

namespace {

// Precedence used by the printer: additive 1, multiplicative 2, unary 3.
int expr_prec(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
      return 2;
    default:
      return 3;
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_rec(const Expr& e, std::string& out) {
  auto child = [&out](const Expr& c, int min_prec) {
    if (expr_prec(c) < min_prec) {
      out += '(';
      print_rec(c, out);
      out += ')';
    } else {
      print_rec(c, out);
    }
  };
  switch (e.kind) {
    case ExprKind::Constant:
      if (e.value < 0) {
        out += '(';
        out += format_double(e.value);
        out += ')';
      } else {
        out += format_double(e.value);
      }
      break;
    case ExprKind::Variable:
      out += e.name;
      break;
    case ExprKind::Negate:
      out += '-';
      child(*e.lhs, 3);
      break;
    case ExprKind::Add:
      child(*e.lhs, 1);
      out += " + ";
      child(*e.rhs, 2);
      break;
    case ExprKind::Sub:
      child(*e.lhs, 1);
      out += " - ";
      child(*e.rhs, 2);  // right operand binds tighter: a - (b - c) keeps parens
      break;
    case ExprKind::Mul:
      child(*e.lhs, 2);
      out += " * ";
      child(*e.rhs, 3);
      break;
    case ExprKind::Abs:
      out += "abs(";
      print_rec(*e.lhs, out);
      out += ')';
      break;
  }
}

double range_lo(const VarRange& r) { return r.lo; }

// inf-safe sum that never produces NaN: opposite infinities cannot meet here
// because lows stay low and highs stay high, but guard anyway.
double safe_add(double a, double b) {
  if (std::isinf(a)) return a;
  if (std::isinf(b)) return b;
  return a + b;
}

double safe_mul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  print_rec(e, out);
  return out;
}

VarRange eval_expr_range(const Expr& e, std::span<const VarRange> ranges) {
  switch (e.kind) {
    case ExprKind::Constant:
      return {e.value, e.value};
    case ExprKind::Variable: {
      const auto idx = static_cast<std::size_t>(e.var_index);
      if (idx < ranges.size()) return ranges[idx];
      return {};
    }
    case ExprKind::Negate: {
      VarRange r = eval_expr_range(*e.lhs, ranges);
      return {-r.hi, -r.lo};
    }
    case ExprKind::Add: {
      VarRange a = eval_expr_range(*e.lhs, ranges);
      VarRange b = eval_expr_range(*e.rhs, ranges);
      return {safe_add(a.lo, b.lo), safe_add(a.hi, b.hi)};
    }
    case ExprKind::Sub: {
      VarRange a = eval_expr_range(*e.lhs, ranges);
      VarRange b = eval_expr_range(*e.rhs, ranges);
      return {safe_add(a.lo, -b.hi), safe_add(a.hi, -b.lo)};
    }
    case ExprKind::Mul: {
      VarRange a = eval_expr_range(*e.lhs, ranges);
      VarRange b = eval_expr_range(*e.rhs, ranges);
      const double p1 = safe_mul(a.lo, b.lo);
      const double p2 = safe_mul(a.lo, b.hi);
      const double p3 = safe_mul(a.hi, b.lo);
      const double p4 = safe_mul(a.hi, b.hi);
      return {std::min(std::min(p1, p2), std::min(p3, p4)),
              std::max(std::max(p1, p2), std::max(p3, p4))};
    }
    case ExprKind::Abs: {
      VarRange r = eval_expr_range(*e.lhs, ranges);
      if (range_lo(r) >= 0.0) return r;
      if (r.hi <= 0.0) return {-r.hi, -r.lo};
      return {0.0, std::max(r.hi, -r.lo)};
    }
  }
  return {};
}

}  // namespace stlmon
