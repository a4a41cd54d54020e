// SPDX-License-Identifier: Apache-2.0
#include "stlmon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stlmon/errors.hpp"

namespace stlmon {

std::pair<std::int64_t, std::int64_t> grid_window(const TimeInterval& interval,
                                                  double delta) {
  // Conservative snap: lo up, hi down; never widens the window.
  const double lo_raw = interval.lo / delta;
  const double hi_raw = interval.hi / delta;
  const auto lo = static_cast<std::int64_t>(std::ceil(lo_raw - 1e-9));
  const auto hi = static_cast<std::int64_t>(std::floor(hi_raw + 1e-9));
  if (lo > hi) {
    throw TraceFormatError("interval [" + std::to_string(interval.lo) + "," +
                           std::to_string(interval.hi) +
                           "] contains no grid point at step " +
                           std::to_string(delta));
  }
  return {std::max<std::int64_t>(lo, 0), hi};
}

std::int64_t horizon_samples(const Formula& f, double delta) {
  switch (f.kind) {
    case FormulaKind::Atom:
    case FormulaKind::FalseConst:
      return 0;
    case FormulaKind::Not:
      return horizon_samples(*f.left, delta);
    case FormulaKind::And:
    case FormulaKind::Or:
      return std::max(horizon_samples(*f.left, delta),
                      horizon_samples(*f.right, delta));
    case FormulaKind::Always:
    case FormulaKind::Eventually:
      return grid_window(f.interval, delta).second +
             horizon_samples(*f.left, delta);
    case FormulaKind::Until:
      return grid_window(f.interval, delta).second +
             std::max(horizon_samples(*f.left, delta),
                      horizon_samples(*f.right, delta));
  }
  return 0;
}

namespace {

struct OracleContext {
  const Trace& trace;
  double delta;
  std::vector<double> sample;  // scratch row

  double atom_value(const Expr& e, std::int64_t k) {
    const auto arity = trace.variables().size();
    sample.resize(arity);
    for (std::size_t i = 0; i < arity; ++i) {
      sample[i] = trace.value(i, static_cast<std::size_t>(k));
    }
    return eval_expr(e, sample);
  }
};

double rob(OracleContext& ctx, const Formula& f, std::int64_t k);

double rob_until(OracleContext& ctx, const Formula& f, std::int64_t k) {
  const auto [lo, hi] = grid_window(f.interval, ctx.delta);
  double best = -kInf;                // sup over the empty set
  double left_inf = kInf;             // inf of left operand over [k, t)
  for (std::int64_t t = k; t <= k + hi; ++t) {
    if (t >= k + lo) {
      best = std::max(best, std::min(rob(ctx, *f.right, t), left_inf));
    }
    left_inf = std::min(left_inf, rob(ctx, *f.left, t));
  }
  return best;
}

double rob(OracleContext& ctx, const Formula& f, std::int64_t k) {
  switch (f.kind) {
    case FormulaKind::Atom:
      return ctx.atom_value(*f.atom.expr, k);
    case FormulaKind::FalseConst:
      return -kInf;
    case FormulaKind::Not:
      return -rob(ctx, *f.left, k);
    case FormulaKind::And:
      return std::min(rob(ctx, *f.left, k), rob(ctx, *f.right, k));
    case FormulaKind::Or:
      return std::max(rob(ctx, *f.left, k), rob(ctx, *f.right, k));
    case FormulaKind::Always: {
      const auto [lo, hi] = grid_window(f.interval, ctx.delta);
      double worst = kInf;
      for (std::int64_t t = k + lo; t <= k + hi; ++t) {
        worst = std::min(worst, rob(ctx, *f.left, t));
      }
      return worst;
    }
    case FormulaKind::Eventually: {
      const auto [lo, hi] = grid_window(f.interval, ctx.delta);
      double best = -kInf;
      for (std::int64_t t = k + lo; t <= k + hi; ++t) {
        best = std::max(best, rob(ctx, *f.left, t));
      }
      return best;
    }
    case FormulaKind::Until:
      return rob_until(ctx, f, k);
  }
  return 0.0;
}

bool sat(OracleContext& ctx, const Formula& f, std::int64_t k);

bool sat_until(OracleContext& ctx, const Formula& f, std::int64_t k) {
  const auto [lo, hi] = grid_window(f.interval, ctx.delta);
  for (std::int64_t t = k + lo; t <= k + hi; ++t) {
    if (!sat(ctx, *f.right, t)) continue;
    bool left_holds = true;
    for (std::int64_t u = k; u < t; ++u) {
      if (!sat(ctx, *f.left, u)) {
        left_holds = false;
        break;
      }
    }
    if (left_holds) return true;
  }
  return false;
}

bool sat(OracleContext& ctx, const Formula& f, std::int64_t k) {
  switch (f.kind) {
    case FormulaKind::Atom:
      return ctx.atom_value(*f.atom.expr, k) > 0.0;
    case FormulaKind::FalseConst:
      return false;
    case FormulaKind::Not:
      return !sat(ctx, *f.left, k);
    case FormulaKind::And:
      return sat(ctx, *f.left, k) && sat(ctx, *f.right, k);
    case FormulaKind::Or:
      return sat(ctx, *f.left, k) || sat(ctx, *f.right, k);
    case FormulaKind::Always: {
      const auto [lo, hi] = grid_window(f.interval, ctx.delta);
      for (std::int64_t t = k + lo; t <= k + hi; ++t) {
        if (!sat(ctx, *f.left, t)) return false;
      }
      return true;
    }
    case FormulaKind::Eventually: {
      const auto [lo, hi] = grid_window(f.interval, ctx.delta);
      for (std::int64_t t = k + lo; t <= k + hi; ++t) {
        if (sat(ctx, *f.left, t)) return true;
      }
      return false;
    }
    case FormulaKind::Until:
      return sat_until(ctx, f, k);
  }
  return false;
}

void require_coverage(const Trace& trace, const Formula& f, std::size_t k) {
  const std::int64_t need =
      static_cast<std::int64_t>(k) + horizon_samples(f, trace.step());
  if (need >= static_cast<std::int64_t>(trace.size())) {
    throw TraceFormatError("trace too short: needs samples through index " +
                           std::to_string(need) + ", has " +
                           std::to_string(trace.size()));
  }
}

}  // namespace

double robustness(const Trace& trace, const Formula& f, std::size_t k) {
  require_coverage(trace, f, k);
  OracleContext ctx{trace, trace.step(), {}};
  return rob(ctx, f, static_cast<std::int64_t>(k));
}

bool satisfies(const Trace& trace, const Formula& f, std::size_t k) {
  require_coverage(trace, f, k);
  OracleContext ctx{trace, trace.step(), {}};
  return sat(ctx, f, static_cast<std::int64_t>(k));
}

}  // namespace stlmon
