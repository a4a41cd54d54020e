// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace stlmon {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ExprKind { Constant, Variable, Negate, Add, Sub, Mul, Abs };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Arithmetic expression over named signal variables. Total over finite
/// inputs: there is deliberately no division.
struct Expr {
  ExprKind kind = ExprKind::Constant;
  double value = 0.0;     // Constant
  std::string name;       // Variable
  int var_index = -1;     // Variable, position in the declared variable list
  ExprPtr lhs;            // unary and binary nodes
  ExprPtr rhs;            // binary nodes

  static ExprPtr constant(double v);
  static ExprPtr variable(std::string name, int index);
  static ExprPtr negate(ExprPtr e);
  static ExprPtr add(ExprPtr a, ExprPtr b);
  static ExprPtr sub(ExprPtr a, ExprPtr b);
  static ExprPtr mul(ExprPtr a, ExprPtr b);
  static ExprPtr abs(ExprPtr e);
};

/// Evaluate against one sample vector (indexed by var_index).
double eval_expr(const Expr& e, std::span<const double> sample);

bool expr_equal(const Expr& a, const Expr& b);

/// Render with minimal parentheses; reparses to the same tree.
std::string print_expr(const Expr& e);

/// Per-variable value range. [lo, hi] with lo <= hi; +-inf when unknown.
struct VarRange {
  double lo = -kInf;
  double hi = kInf;
};

/// Interval extension of an expression over per-variable ranges
/// (indexed by var_index; missing entries mean unbounded).
VarRange eval_expr_range(const Expr& e, std::span<const VarRange> ranges);

}  // namespace stlmon
