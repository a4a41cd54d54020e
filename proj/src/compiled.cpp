// SPDX-License-Identifier: Apache-2.0
#include "stlmon/compiled.hpp"

#include <algorithm>
#include <cassert>

#include "stlmon/oracle.hpp"
#include "stlmon/sliding_window.hpp"

namespace stlmon {

namespace {

int flatten(const Formula& f, double delta, const DomainBounds& bounds,
            const std::vector<std::string>& variables,
            std::vector<CompiledNode>& nodes, int& atom_count) {
  CompiledNode node;
  node.kind = f.kind;
  switch (f.kind) {
    case FormulaKind::Atom: {
      node.atom_id = f.atom.id;
      node.expr = f.atom.expr;
      auto [lo, hi] = atom_bounds(f.atom, bounds, variables);
      node.r_min = lo;
      node.r_max = hi;
      node.apriori = {lo, hi};
      node.extent = 0;
      atom_count = std::max(atom_count, f.atom.id + 1);
      break;
    }
    case FormulaKind::FalseConst:
      node.apriori = {-kInf, -kInf};
      node.extent = 0;
      break;
    case FormulaKind::Not: {
      node.left = flatten(*f.left, delta, bounds, variables, nodes, atom_count);
      const auto& l = nodes[node.left];
      node.extent = l.extent;
      node.apriori = iv_neg(l.apriori);
      break;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      node.left = flatten(*f.left, delta, bounds, variables, nodes, atom_count);
      node.right = flatten(*f.right, delta, bounds, variables, nodes, atom_count);
      const auto& l = nodes[node.left];
      const auto& r = nodes[node.right];
      node.extent = std::max(l.extent, r.extent);
      node.apriori = f.kind == FormulaKind::And ? iv_min(l.apriori, r.apriori)
                                                : iv_max(l.apriori, r.apriori);
      break;
    }
    case FormulaKind::Always:
    case FormulaKind::Eventually: {
      node.left = flatten(*f.left, delta, bounds, variables, nodes, atom_count);
      auto [lo, hi] = grid_window(f.interval, delta);
      node.win_lo = lo;
      node.win_hi = hi;
      const auto& l = nodes[node.left];
      node.extent = hi + l.extent;
      node.apriori = l.apriori;  // uniform columns: window extremum is the value
      break;
    }
    case FormulaKind::Until: {
      node.left = flatten(*f.left, delta, bounds, variables, nodes, atom_count);
      node.right = flatten(*f.right, delta, bounds, variables, nodes, atom_count);
      auto [lo, hi] = grid_window(f.interval, delta);
      node.win_lo = lo;
      node.win_hi = hi;
      const auto& l = nodes[node.left];
      const auto& r = nodes[node.right];
      node.extent = hi + std::max(l.extent, r.extent);
      // over uniform columns the candidate at t = tau has an empty left range
      node.apriori = lo == 0 ? r.apriori : iv_min(l.apriori, r.apriori);
      break;
    }
  }
  nodes.push_back(std::move(node));
  return static_cast<int>(nodes.size()) - 1;
}

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, double delta,
                                 const DomainBounds& bounds,
                                 const std::vector<std::string>& variables,
                                 std::int64_t anchor_max)
    : delta_(delta) {
  flatten(f, delta, bounds, variables, nodes_, atom_count_);
  // anchor instants propagate outside-in: a node read at tau needs its
  // children up to tau plus its window
  nodes_.back().window_end = anchor_max;
  for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
    const CompiledNode& n = nodes_[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case FormulaKind::Not:
        nodes_[n.left].window_end =
            std::max(nodes_[n.left].window_end, n.window_end);
        break;
      case FormulaKind::And:
      case FormulaKind::Or:
        nodes_[n.left].window_end =
            std::max(nodes_[n.left].window_end, n.window_end);
        nodes_[n.right].window_end =
            std::max(nodes_[n.right].window_end, n.window_end);
        break;
      case FormulaKind::Always:
      case FormulaKind::Eventually:
        nodes_[n.left].window_end =
            std::max(nodes_[n.left].window_end, n.window_end + n.win_hi);
        break;
      case FormulaKind::Until:
        nodes_[n.left].window_end =
            std::max(nodes_[n.left].window_end, n.window_end + n.win_hi);
        nodes_[n.right].window_end =
            std::max(nodes_[n.right].window_end, n.window_end + n.win_hi);
        break;
      default:
        break;
    }
  }
  horizon_samples_ = 0;
  for (const CompiledNode& n : nodes_) {
    horizon_samples_ = std::max(horizon_samples_, n.window_end + n.extent);
  }
}

IntervalTable::IntervalTable(std::shared_ptr<const CompiledFormula> compiled)
    : IntervalTable(std::move(compiled), Options()) {}

IntervalTable::IntervalTable(std::shared_ptr<const CompiledFormula> compiled,
                             Options options)
    : compiled_(std::move(compiled)), options_(options) {
  const auto& nodes = compiled_->nodes();
  columns_.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    columns_[i].assign(static_cast<std::size_t>(nodes[i].window_end) + 1,
                       nodes[i].apriori);
  }
}

void IntervalTable::advance(const PrefixView& view, std::int64_t local_b,
                            std::int64_t origin) {
  assert(local_b == b_ + 1);
  b_ = local_b;
  if (local_b > compiled_->horizon_samples()) return;  // every column pinned

  const auto& nodes = compiled_->nodes();
  const auto& trace = view.trace();
  const std::size_t arity = trace.variables().size();
  std::vector<double> sample(arity);
  const auto global = static_cast<std::size_t>(origin + local_b);
  for (std::size_t i = 0; i < arity; ++i) {
    sample[i] = view.value_at(i, global);
  }

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const CompiledNode& n = nodes[i];
    if (n.kind == FormulaKind::Atom) {
      if (local_b <= n.window_end) {
        const double v = eval_expr(*n.expr, sample);
        columns_[i][static_cast<std::size_t>(local_b)] = iv_point(v);
      }
      continue;
    }
    if (n.kind == FormulaKind::FalseConst) continue;
    const std::int64_t lo = std::max<std::int64_t>(0, local_b - n.extent);
    const std::int64_t hi = std::min(n.window_end, local_b);
    if (lo <= hi) recompute(static_cast<int>(i), lo, hi);
  }
}

void IntervalTable::recompute(int node_index, std::int64_t lo, std::int64_t hi) {
  const CompiledNode& n = compiled_->nodes()[static_cast<std::size_t>(node_index)];
  auto& cols = columns_[static_cast<std::size_t>(node_index)];
  switch (n.kind) {
    case FormulaKind::Not: {
      const auto& child = columns_[n.left];
      for (std::int64_t t = lo; t <= hi; ++t) {
        cols[t] = iv_neg(child[t]);
      }
      return;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      const auto& l = columns_[n.left];
      const auto& r = columns_[n.right];
      if (n.kind == FormulaKind::And) {
        for (std::int64_t t = lo; t <= hi; ++t) cols[t] = iv_min(l[t], r[t]);
      } else {
        for (std::int64_t t = lo; t <= hi; ++t) cols[t] = iv_max(l[t], r[t]);
      }
      return;
    }
    case FormulaKind::Always:
    case FormulaKind::Eventually: {
      const auto& child = columns_[n.left];
      const bool is_min = n.kind == FormulaKind::Always;
      if (options_.sliding_kernel) {
        // one deque sweep over the touched slice instead of a scan per column
        const std::int64_t base = lo + n.win_lo;
        const std::size_t span = static_cast<std::size_t>(hi + n.win_hi - base) + 1;
        scratch_lo_.resize(span);
        scratch_hi_.resize(span);
        for (std::size_t j = 0; j < span; ++j) {
          scratch_lo_[j] = child[static_cast<std::size_t>(base) + j].lower;
          scratch_hi_[j] = child[static_cast<std::size_t>(base) + j].upper;
        }
        const std::int64_t width = n.win_hi - n.win_lo;
        const std::size_t count = static_cast<std::size_t>(hi - lo) + 1;
        out_lo_.resize(count);
        out_hi_.resize(count);
        if (is_min) {
          sliding_extremum_range<std::less<double>>(scratch_lo_, 0, width, 0,
                                                    hi - lo, out_lo_.data());
          sliding_extremum_range<std::less<double>>(scratch_hi_, 0, width, 0,
                                                    hi - lo, out_hi_.data());
        } else {
          sliding_extremum_range<std::greater<double>>(scratch_lo_, 0, width, 0,
                                                       hi - lo, out_lo_.data());
          sliding_extremum_range<std::greater<double>>(scratch_hi_, 0, width, 0,
                                                       hi - lo, out_hi_.data());
        }
        for (std::int64_t t = lo; t <= hi; ++t) {
          cols[t] = {out_lo_[static_cast<std::size_t>(t - lo)],
                     out_hi_[static_cast<std::size_t>(t - lo)]};
        }
      } else {
        for (std::int64_t t = lo; t <= hi; ++t) {
          RobustnessInterval acc = child[t + n.win_lo];
          for (std::int64_t u = t + n.win_lo + 1; u <= t + n.win_hi; ++u) {
            acc = is_min ? iv_min(acc, child[u]) : iv_max(acc, child[u]);
          }
          cols[t] = acc;
        }
      }
      return;
    }
    case FormulaKind::Until: {
      const auto& l = columns_[n.left];
      const auto& r = columns_[n.right];
      for (std::int64_t t = lo; t <= hi; ++t) {
        RobustnessInterval best{-kInf, -kInf};
        RobustnessInterval left_inf{kInf, kInf};
        for (std::int64_t u = t; u <= t + n.win_hi; ++u) {
          if (u >= t + n.win_lo) {
            best = iv_max(best, iv_min(r[u], left_inf));
          }
          left_inf = iv_min(left_inf, l[u]);
        }
        cols[t] = best;
      }
      return;
    }
    default:
      return;
  }
}

}  // namespace stlmon
