// SPDX-License-Identifier: Apache-2.0
#include "stlmon/generator.hpp"

#include <cmath>
#include <cstdio>
#include <span>

#include "stlmon/oracle.hpp"
#include "stlmon/parser.hpp"

namespace stlmon {

double uniform_double(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Atom text with a-priori bounds that straddle zero whenever variables range
// over [-12, 12]; constants stay within +-9.5 to keep it that way.
std::string gen_atom(std::mt19937_64& rng, const std::vector<std::string>& vars) {
  const std::string& x = vars[static_cast<std::size_t>(
      uniform_int(rng, 0, static_cast<int>(vars.size()) - 1))];
  const double c = uniform_double(rng, -9.5, 9.5);
  const char* cmp = rng() % 2 == 0 ? "<" : ">";
  switch (uniform_int(rng, 0, 4)) {
    case 0:
      return x + " " + cmp + " " + format_value(c);
    case 1:
      return format_value(c) + " " + cmp + " " + x;
    case 2: {
      const std::string& y = vars[static_cast<std::size_t>(
          uniform_int(rng, 0, static_cast<int>(vars.size()) - 1))];
      return x + " - " + y + " " + cmp + " " + format_value(c);
    }
    case 3: {
      const std::string& y = vars[static_cast<std::size_t>(
          uniform_int(rng, 0, static_cast<int>(vars.size()) - 1))];
      return "abs(" + x + " - " + y + ") < " + format_value(std::fabs(c) + 0.5);
    }
    default:
      return "2 * " + x + " " + cmp + " " + format_value(c);
  }
}

std::string gen_interval(std::mt19937_64& rng) {
  const int lo = uniform_int(rng, 0, 4);
  const int hi = lo + uniform_int(rng, 0, 8 - lo);
  return "_[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

std::string gen_formula(std::mt19937_64& rng, const std::vector<std::string>& vars,
                        int depth) {
  if (depth <= 0) return "(" + gen_atom(rng, vars) + ")";
  switch (uniform_int(rng, 0, 9)) {
    case 0:
    case 1:
      return "(" + gen_atom(rng, vars) + ")";
    case 2:
      return "not " + gen_formula(rng, vars, depth - 1);
    case 3:
      return "(" + gen_formula(rng, vars, depth - 1) + " and " +
             gen_formula(rng, vars, depth - 1) + ")";
    case 4:
      return "(" + gen_formula(rng, vars, depth - 1) + " or " +
             gen_formula(rng, vars, depth - 1) + ")";
    case 5:
      return "(" + gen_formula(rng, vars, depth - 1) + " -> " +
             gen_formula(rng, vars, depth - 1) + ")";
    case 6:
    case 7:
      return "alw" + gen_interval(rng) + " " + gen_formula(rng, vars, depth - 1);
    case 8:
      return "ev" + gen_interval(rng) + " " + gen_formula(rng, vars, depth - 1);
    default:
      return "(" + gen_formula(rng, vars, depth - 1) + " until" +
             gen_interval(rng) + " " + gen_formula(rng, vars, depth - 1) + ")";
  }
}

std::string gen_until_rooted(std::mt19937_64& rng,
                             const std::vector<std::string>& vars, int depth) {
  return "(" + gen_formula(rng, vars, depth - 1) + " until" + gen_interval(rng) +
         " " + gen_formula(rng, vars, depth - 1) + ")";
}

std::vector<std::vector<double>> gen_samples(std::mt19937_64& rng,
                                             std::size_t arity, std::size_t n) {
  // piecewise-linear control points, sampled on the unit grid, then jittered
  std::vector<std::vector<double>> rows(n, std::vector<double>(arity));
  for (std::size_t v = 0; v < arity; ++v) {
    const int segments = uniform_int(rng, 2, 5);
    std::vector<double> knots(static_cast<std::size_t>(segments) + 1);
    for (double& k : knots) k = uniform_double(rng, -9.0, 9.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double pos = n == 1 ? 0.0
                                : static_cast<double>(i) * segments /
                                      static_cast<double>(n - 1);
      const auto seg = std::min<std::size_t>(static_cast<std::size_t>(pos),
                                             static_cast<std::size_t>(segments) - 1);
      const double frac = pos - static_cast<double>(seg);
      double value = knots[seg] * (1.0 - frac) + knots[seg + 1] * frac;
      value += uniform_double(rng, 1e-4, 3e-3);  // keep atom values off zero
      rows[i][v] = value;
    }
  }
  return rows;
}

bool any_atom_value_near_zero(const GenCase& c) {
  const auto atom_list = atoms(*c.formula);
  for (const auto& row : c.samples) {
    for (const Atom& a : atom_list) {
      if (std::fabs(eval_expr(*a.expr, row)) < 1e-9) return true;
    }
  }
  return false;
}

}  // namespace

Trace GenCase::make_trace() const {
  Trace trace(delta, variables);
  for (const auto& row : samples) {
    trace.append(row);
  }
  return trace;
}

std::vector<GenCase> gen_suite(std::uint64_t seed, int count) {
  std::vector<GenCase> out;
  out.reserve(static_cast<std::size_t>(count));
  std::mt19937_64 rng(seed);
  static const std::vector<std::string> pool = {"x", "y", "z"};

  for (int i = 0; i < count; ++i) {
    GenCase c;
    const int arity = uniform_int(rng, 1, 3);
    c.variables.assign(pool.begin(), pool.begin() + arity);
    const int depth = uniform_int(rng, 1, 4);
    for (int attempt = 0;; ++attempt) {
      c.spec_text = i % 10 == 0 ? gen_until_rooted(rng, c.variables, depth)
                                : gen_formula(rng, c.variables, depth);
      c.formula = parse_formula(c.spec_text, c.variables);
      const std::int64_t h = horizon_samples(*c.formula, c.delta);
      if (h + 1 > 64) continue;  // cannot resolve within the length cap
      const std::size_t len = std::min<std::size_t>(
          64, static_cast<std::size_t>(h) + 1 +
                  static_cast<std::size_t>(uniform_int(rng, 0, 15)));
      c.samples = gen_samples(rng, static_cast<std::size_t>(arity), len);
      if (!any_atom_value_near_zero(c)) break;
      if (attempt > 50) break;  // jitter makes this effectively unreachable
    }
    if (rng() % 10 < 3) {
      for (const auto& v : c.variables) {
        c.bounds.by_name[v] = {-12.0, 12.0};
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace stlmon
