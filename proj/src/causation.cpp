// SPDX-License-Identifier: Apache-2.0
#include "stlmon/causation.hpp"

#include <algorithm>
#include <string>

#include "stlmon/errors.hpp"

namespace stlmon {

const char* causation_name(CausationVerdict v) {
  switch (v) {
    case CausationVerdict::Violation:
      return "vio";
    case CausationVerdict::Satisfaction:
      return "sat";
    case CausationVerdict::Irrelevant:
      return "irrelevant";
  }
  return "irrelevant";
}

bool Epoch::contains_instant(std::int64_t t) const {
  return std::any_of(pairs.begin(), pairs.end(),
                     [t](const auto& p) { return p.second == t; });
}

namespace {

// Per-step epoch computation over a shared interval table. Each (node, tau,
// polarity) is computed at most once; every level is guarded by the strict
// sign of its own classic bound, so untouched regions never expand.
//
// Besides the full sets, two predicate forms answer the questions the
// monitors actually ask per step: does the epoch contain a given instant,
// and is it non-empty at all. The predicates follow the same guarded
// recursion but skip the set unions.
class EpochEvaluator {
 public:
  explicit EpochEvaluator(const IntervalTable& table)
      : table_(table), nodes_(table.compiled().nodes()) {
    flag_memo_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      flag_memo_[i].assign(
          4 * (static_cast<std::size_t>(nodes_[i].window_end) + 1), kUnknown);
    }
  }

  const Epoch& violation(int node, std::int64_t tau) {
    ensure_sets();
    Slot& slot = vio_memo_[static_cast<std::size_t>(node)][static_cast<std::size_t>(tau)];
    if (slot.ready) return slot.epoch;
    slot.ready = true;
    if (table_.at(node, tau).upper < 0.0) {
      build_violation(node, tau, slot.epoch);
    }
    return slot.epoch;
  }

  const Epoch& satisfaction(int node, std::int64_t tau) {
    ensure_sets();
    Slot& slot = sat_memo_[static_cast<std::size_t>(node)][static_cast<std::size_t>(tau)];
    if (slot.ready) return slot.epoch;
    slot.ready = true;
    if (table_.at(node, tau).lower > 0.0) {
      build_satisfaction(node, tau, slot.epoch);
    }
    return slot.epoch;
  }

  // `instant` is fixed per evaluator use (the newest sample); pass kAnyInstant
  // to decide non-emptiness instead of membership.
  static constexpr std::int64_t kAnyInstant = -1;

  bool violation_has(int node, std::int64_t tau, std::int64_t instant) {
    const int q = instant == kAnyInstant ? kVioAny : kVioAt;
    std::int8_t& memo = flag(node, tau, q);
    if (memo != kUnknown) return memo == kTrue;
    bool result = false;
    if (table_.at(node, tau).upper < 0.0) {
      result = decide_violation(node, tau, instant);
    }
    memo = result ? kTrue : kFalse;
    return result;
  }

  bool satisfaction_has(int node, std::int64_t tau, std::int64_t instant) {
    const int q = instant == kAnyInstant ? kSatAny : kSatAt;
    std::int8_t& memo = flag(node, tau, q);
    if (memo != kUnknown) return memo == kTrue;
    bool result = false;
    if (table_.at(node, tau).lower > 0.0) {
      result = decide_satisfaction(node, tau, instant);
    }
    memo = result ? kTrue : kFalse;
    return result;
  }

 private:
  struct Slot {
    bool ready = false;
    Epoch epoch;
  };

  static constexpr std::int8_t kUnknown = -1;
  static constexpr std::int8_t kFalse = 0;
  static constexpr std::int8_t kTrue = 1;
  enum { kVioAt = 0, kSatAt = 1, kVioAny = 2, kSatAny = 3 };

  std::int8_t& flag(int node, std::int64_t tau, int q) {
    return flag_memo_[static_cast<std::size_t>(node)]
                     [4 * static_cast<std::size_t>(tau) + static_cast<std::size_t>(q)];
  }

  void ensure_sets() {
    if (!vio_memo_.empty()) return;
    vio_memo_.resize(nodes_.size());
    sat_memo_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const std::size_t cols = static_cast<std::size_t>(nodes_[i].window_end) + 1;
      vio_memo_[i].resize(cols);
      sat_memo_[i].resize(cols);
    }
  }

  bool decide_violation(int node_index, std::int64_t tau, std::int64_t instant) {
    const CompiledNode& n = nodes_[static_cast<std::size_t>(node_index)];
    switch (n.kind) {
      case FormulaKind::Atom:
        return instant == kAnyInstant || tau == instant;
      case FormulaKind::FalseConst:
        return false;
      case FormulaKind::Not:
        return satisfaction_has(n.left, tau, instant);
      case FormulaKind::And:
      case FormulaKind::Or:
        return (table_.at(n.left, tau).upper < 0.0 &&
                violation_has(n.left, tau, instant)) ||
               (table_.at(n.right, tau).upper < 0.0 &&
                violation_has(n.right, tau, instant));
      case FormulaKind::Always:
      case FormulaKind::Eventually: {
        for (std::int64_t t = tau + n.win_lo; t <= tau + n.win_hi; ++t) {
          if (table_.at(n.left, t).upper < 0.0 &&
              violation_has(n.left, t, instant)) {
            return true;
          }
        }
        return false;
      }
      case FormulaKind::Until: {
        double left_inf = kInf;
        bool left_any = false;  // some t' in [tau, t) contributes
        for (std::int64_t t = tau; t <= tau + n.win_hi; ++t) {
          if (t >= tau + n.win_lo) {
            const double cand = std::min(table_.at(n.right, t).upper, left_inf);
            if (cand < 0.0 &&
                (left_any || violation_has(n.right, t, instant))) {
              return true;
            }
          }
          left_any = left_any || violation_has(n.left, t, instant);
          left_inf = std::min(left_inf, table_.at(n.left, t).upper);
        }
        return false;
      }
    }
    return false;
  }

  bool decide_satisfaction(int node_index, std::int64_t tau, std::int64_t instant) {
    const CompiledNode& n = nodes_[static_cast<std::size_t>(node_index)];
    switch (n.kind) {
      case FormulaKind::Atom:
        return instant == kAnyInstant || tau == instant;
      case FormulaKind::FalseConst:
        return false;
      case FormulaKind::Not:
        return violation_has(n.left, tau, instant);
      case FormulaKind::And:
      case FormulaKind::Or:
        return (table_.at(n.left, tau).lower > 0.0 &&
                satisfaction_has(n.left, tau, instant)) ||
               (table_.at(n.right, tau).lower > 0.0 &&
                satisfaction_has(n.right, tau, instant));
      case FormulaKind::Always:
      case FormulaKind::Eventually: {
        for (std::int64_t t = tau + n.win_lo; t <= tau + n.win_hi; ++t) {
          if (table_.at(n.left, t).lower > 0.0 &&
              satisfaction_has(n.left, t, instant)) {
            return true;
          }
        }
        return false;
      }
      case FormulaKind::Until: {
        double left_inf = kInf;
        bool left_any = false;
        for (std::int64_t t = tau; t <= tau + n.win_hi; ++t) {
          if (t >= tau + n.win_lo) {
            const double cand = std::min(table_.at(n.right, t).lower, left_inf);
            if (cand > 0.0 &&
                (left_any || satisfaction_has(n.right, t, instant))) {
              return true;
            }
          }
          left_any = left_any || satisfaction_has(n.left, t, instant);
          left_inf = std::min(left_inf, table_.at(n.left, t).lower);
        }
        return false;
      }
    }
    return false;
  }

  static void merge(Epoch& into, const Epoch& from) {
    into.pairs.insert(from.pairs.begin(), from.pairs.end());
  }

  void build_violation(int node_index, std::int64_t tau, Epoch& out) {
    const CompiledNode& n = nodes_[static_cast<std::size_t>(node_index)];
    switch (n.kind) {
      case FormulaKind::Atom:
        out.pairs.insert({n.atom_id, tau});
        return;
      case FormulaKind::FalseConst:
        return;  // no atoms to blame
      case FormulaKind::Not:
        merge(out, satisfaction(n.left, tau));
        return;
      case FormulaKind::And:
      case FormulaKind::Or:
        // for a violated disjunction both operands are violated, so the
        // conjunction rule applies to both connectives
        if (table_.at(n.left, tau).upper < 0.0) merge(out, violation(n.left, tau));
        if (table_.at(n.right, tau).upper < 0.0) merge(out, violation(n.right, tau));
        return;
      case FormulaKind::Always:
      case FormulaKind::Eventually:
        for (std::int64_t t = tau + n.win_lo; t <= tau + n.win_hi; ++t) {
          if (table_.at(n.left, t).upper < 0.0) merge(out, violation(n.left, t));
        }
        return;
      case FormulaKind::Until: {
        double left_inf = kInf;  // inf of left uppers over [tau, t)
        for (std::int64_t t = tau; t <= tau + n.win_hi; ++t) {
          if (t >= tau + n.win_lo) {
            const double cand = std::min(table_.at(n.right, t).upper, left_inf);
            if (cand < 0.0) {
              merge(out, violation(n.right, t));
              for (std::int64_t u = tau; u < t; ++u) {
                merge(out, violation(n.left, u));
              }
            }
          }
          left_inf = std::min(left_inf, table_.at(n.left, t).upper);
        }
        return;
      }
    }
  }

  void build_satisfaction(int node_index, std::int64_t tau, Epoch& out) {
    const CompiledNode& n = nodes_[static_cast<std::size_t>(node_index)];
    switch (n.kind) {
      case FormulaKind::Atom:
        out.pairs.insert({n.atom_id, tau});
        return;
      case FormulaKind::FalseConst:
        return;
      case FormulaKind::Not:
        merge(out, violation(n.left, tau));
        return;
      case FormulaKind::And:
      case FormulaKind::Or:
        if (table_.at(n.left, tau).lower > 0.0) merge(out, satisfaction(n.left, tau));
        if (table_.at(n.right, tau).lower > 0.0)
          merge(out, satisfaction(n.right, tau));
        return;
      case FormulaKind::Always:
      case FormulaKind::Eventually:
        for (std::int64_t t = tau + n.win_lo; t <= tau + n.win_hi; ++t) {
          if (table_.at(n.left, t).lower > 0.0) merge(out, satisfaction(n.left, t));
        }
        return;
      case FormulaKind::Until: {
        double left_inf = kInf;  // inf of left lowers over [tau, t)
        for (std::int64_t t = tau; t <= tau + n.win_hi; ++t) {
          if (t >= tau + n.win_lo) {
            const double cand = std::min(table_.at(n.right, t).lower, left_inf);
            if (cand > 0.0) {
              merge(out, satisfaction(n.right, t));
              for (std::int64_t u = tau; u < t; ++u) {
                merge(out, satisfaction(n.left, u));
              }
            }
          }
          left_inf = std::min(left_inf, table_.at(n.left, t).lower);
        }
        return;
      }
    }
  }

  const IntervalTable& table_;
  const std::vector<CompiledNode>& nodes_;
  std::vector<std::vector<Slot>> vio_memo_;  // sized lazily, only for full sets
  std::vector<std::vector<Slot>> sat_memo_;
  std::vector<std::vector<std::int8_t>> flag_memo_;
};

std::shared_ptr<const CompiledFormula> compile_for_view(
    const PrefixView& view, const Formula& f, std::int64_t anchor,
    const DomainBounds& bounds) {
  return std::make_shared<const CompiledFormula>(
      f, view.step(), bounds, view.trace().variables(), anchor);
}

IntervalTable table_for_view(const PrefixView& view,
                             std::shared_ptr<const CompiledFormula> compiled) {
  IntervalTable table(std::move(compiled));
  for (std::size_t b = 0; b <= view.b_index(); ++b) {
    table.advance(view.trace().prefix(b), static_cast<std::int64_t>(b), 0);
  }
  return table;
}

}  // namespace

Epoch violation_epoch_from_table(const IntervalTable& table, std::int64_t anchor) {
  EpochEvaluator eval(table);
  return eval.violation(table.compiled().root(), anchor);
}

Epoch satisfaction_epoch_from_table(const IntervalTable& table,
                                    std::int64_t anchor) {
  EpochEvaluator eval(table);
  return eval.satisfaction(table.compiled().root(), anchor);
}

bool violation_epoch_contains(const IntervalTable& table, std::int64_t anchor,
                              std::int64_t instant) {
  EpochEvaluator eval(table);
  return eval.violation_has(table.compiled().root(), anchor, instant);
}

bool satisfaction_epoch_contains(const IntervalTable& table, std::int64_t anchor,
                                 std::int64_t instant) {
  EpochEvaluator eval(table);
  return eval.satisfaction_has(table.compiled().root(), anchor, instant);
}

bool violation_epoch_nonempty(const IntervalTable& table, std::int64_t anchor) {
  EpochEvaluator eval(table);
  return eval.violation_has(table.compiled().root(), anchor,
                            EpochEvaluator::kAnyInstant);
}

bool satisfaction_epoch_nonempty(const IntervalTable& table, std::int64_t anchor) {
  EpochEvaluator eval(table);
  return eval.satisfaction_has(table.compiled().root(), anchor,
                               EpochEvaluator::kAnyInstant);
}

Epoch violation_epoch(const PrefixView& view, const Formula& f, std::int64_t k,
                      const DomainBounds& bounds) {
  auto compiled = compile_for_view(view, f, k, bounds);
  IntervalTable table = table_for_view(view, compiled);
  return violation_epoch_from_table(table, k);
}

Epoch satisfaction_epoch(const PrefixView& view, const Formula& f, std::int64_t k,
                         const DomainBounds& bounds) {
  auto compiled = compile_for_view(view, f, k, bounds);
  IntervalTable table = table_for_view(view, compiled);
  return satisfaction_epoch_from_table(table, k);
}

BooleanCausationMonitor::BooleanCausationMonitor(
    std::shared_ptr<const CompiledFormula> compiled, std::int64_t origin,
    ClassicMonitor::Options options)
    : classic_(std::move(compiled), origin, options) {}

CausationVerdict BooleanCausationMonitor::step(const PrefixView& view) {
  classic_.step(view);
  const std::int64_t b = classic_.steps() - 1;
  const auto& table = classic_.table();
  if (b > table.compiled().horizon_samples()) {
    // table frozen: epochs cannot change and cannot contain the new instant
    steady_ = true;
    last_ = CausationVerdict::Irrelevant;
    return last_;
  }
  EpochEvaluator eval(table);
  const int root = table.compiled().root();
  if (eval.violation_has(root, 0, b)) {
    last_ = CausationVerdict::Violation;
  } else if (eval.satisfaction_has(root, 0, b)) {
    last_ = CausationVerdict::Satisfaction;
  } else {
    last_ = CausationVerdict::Irrelevant;
  }
  vio_nonempty_ = eval.violation_has(root, 0, EpochEvaluator::kAnyInstant);
  sat_nonempty_ = eval.satisfaction_has(root, 0, EpochEvaluator::kAnyInstant);
  return last_;
}

Epoch BooleanCausationMonitor::violation_epoch() const {
  return violation_epoch_from_table(classic_.table(), 0);
}

Epoch BooleanCausationMonitor::satisfaction_epoch() const {
  return satisfaction_epoch_from_table(classic_.table(), 0);
}

CausationVerdict derive_bcaum(double vio_distance, double sat_distance,
                              bool* boundary) {
  if (boundary) *boundary = false;
  if (vio_distance < 0.0) return CausationVerdict::Violation;
  if (sat_distance > 0.0) return CausationVerdict::Satisfaction;
  if (vio_distance == 0.0 || sat_distance == 0.0) {
    if (boundary) *boundary = true;
  }
  return CausationVerdict::Irrelevant;
}

QuantitativeCausationMonitor::QuantitativeCausationMonitor(
    std::shared_ptr<const CompiledFormula> compiled, std::int64_t origin)
    : QuantitativeCausationMonitor(std::move(compiled), origin, Options()) {}

QuantitativeCausationMonitor::QuantitativeCausationMonitor(
    std::shared_ptr<const CompiledFormula> compiled, std::int64_t origin,
    Options options)
    : compiled_(compiled),
      table_(std::move(compiled), IntervalTable::Options{options.sliding_kernel}),
      origin_(origin) {
  const auto& nodes = compiled_->nodes();
  vio_.resize(nodes.size());
  sat_.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::size_t cols = static_cast<std::size_t>(nodes[i].window_end) + 1;
    vio_[i].assign(cols, 0.0);
    sat_[i].assign(cols, 0.0);
  }
  // defaults before any sample: no instant is the current one
  recompute_all_defaults();
}

void QuantitativeCausationMonitor::recompute_all_defaults() {
  const auto& nodes = compiled_->nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    recompute_node(static_cast<int>(i), 0, nodes[i].window_end, -1);
  }
}

void QuantitativeCausationMonitor::gather_sample(const PrefixView& view) {
  const std::size_t arity = view.trace().variables().size();
  sample_.resize(arity);
  const auto global = static_cast<std::size_t>(origin_ + local_b_);
  for (std::size_t i = 0; i < arity; ++i) {
    sample_[i] = view.value_at(i, global);
  }
}

void QuantitativeCausationMonitor::recompute_distances(std::int64_t local_b) {
  const auto& nodes = compiled_->nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const CompiledNode& n = nodes[i];
    // the extra slack column covers the previous step's "current instant"
    // reverting to its default
    const std::int64_t lo = std::max<std::int64_t>(0, local_b - n.extent - 1);
    const std::int64_t hi = std::min(n.window_end, local_b);
    if (lo > hi) continue;
    recompute_node(static_cast<int>(i), lo, hi, local_b);
  }
}

void QuantitativeCausationMonitor::recompute_node(int node_index, std::int64_t lo,
                                                  std::int64_t hi,
                                                  std::int64_t local_b) {
  const CompiledNode& n = compiled_->nodes()[static_cast<std::size_t>(node_index)];
  auto& vio = vio_[static_cast<std::size_t>(node_index)];
  auto& sat = sat_[static_cast<std::size_t>(node_index)];
  switch (n.kind) {
    case FormulaKind::Atom: {
      for (std::int64_t t = lo; t <= hi; ++t) {
        if (t == local_b) {
          const double v = eval_expr(*n.expr, sample_);
          vio[t] = v;
          sat[t] = v;
        } else {
          vio[t] = n.r_max;
          sat[t] = n.r_min;
        }
      }
      return;
    }
    case FormulaKind::FalseConst: {
      // keeps the running min/max reconstruction at the constant's bounds
      for (std::int64_t t = lo; t <= hi; ++t) {
        vio[t] = -kInf;
        sat[t] = -kInf;
      }
      return;
    }
    case FormulaKind::Not: {
      const auto& cvio = vio_[n.left];
      const auto& csat = sat_[n.left];
      for (std::int64_t t = lo; t <= hi; ++t) {
        vio[t] = -csat[t];
        sat[t] = -cvio[t];
      }
      return;
    }
    case FormulaKind::And: {
      const auto& lv = vio_[n.left];
      const auto& ls = sat_[n.left];
      const auto& rv = vio_[n.right];
      const auto& rs = sat_[n.right];
      const auto& lt = table_.columns(n.left);
      const auto& rt = table_.columns(n.right);
      for (std::int64_t t = lo; t <= hi; ++t) {
        vio[t] = std::min(lv[t], rv[t]);
        sat[t] = std::max(std::min(ls[t], rt[t].lower),
                          std::min(lt[t].lower, rs[t]));
      }
      return;
    }
    case FormulaKind::Or: {
      const auto& lv = vio_[n.left];
      const auto& ls = sat_[n.left];
      const auto& rv = vio_[n.right];
      const auto& rs = sat_[n.right];
      const auto& lt = table_.columns(n.left);
      const auto& rt = table_.columns(n.right);
      for (std::int64_t t = lo; t <= hi; ++t) {
        vio[t] = std::min(std::max(lv[t], rt[t].upper),
                          std::max(lt[t].upper, rv[t]));
        sat[t] = std::max(ls[t], rs[t]);
      }
      return;
    }
    case FormulaKind::Always: {
      const auto& cvio = vio_[n.left];
      const auto& csat = sat_[n.left];
      const auto& self = table_.columns(node_index);
      for (std::int64_t t = lo; t <= hi; ++t) {
        double v = kInf;
        double s = -kInf;
        for (std::int64_t u = t + n.win_lo; u <= t + n.win_hi; ++u) {
          v = std::min(v, cvio[u]);
          s = std::max(s, csat[u]);
        }
        vio[t] = v;
        sat[t] = std::min(s, self[t].lower);
      }
      return;
    }
    case FormulaKind::Eventually: {
      const auto& cvio = vio_[n.left];
      const auto& csat = sat_[n.left];
      const auto& self = table_.columns(node_index);
      for (std::int64_t t = lo; t <= hi; ++t) {
        double v = kInf;
        double s = -kInf;
        for (std::int64_t u = t + n.win_lo; u <= t + n.win_hi; ++u) {
          v = std::min(v, cvio[u]);
          s = std::max(s, csat[u]);
        }
        vio[t] = std::max(v, self[t].upper);
        sat[t] = s;
      }
      return;
    }
    case FormulaKind::Until: {
      const auto& lv = vio_[n.left];
      const auto& ls = sat_[n.left];
      const auto& rv = vio_[n.right];
      const auto& rs = sat_[n.right];
      const auto& lt = table_.columns(n.left);
      const auto& rt = table_.columns(n.right);
      const auto& self = table_.columns(node_index);
      for (std::int64_t t = lo; t <= hi; ++t) {
        double best_vio = kInf;
        double best_sat = -kInf;
        double run_inf_vio_left = kInf;    // inf of left vio distances, [t, u)
        double run_sup_sat_left = -kInf;   // sup of left sat distances, [t, u)
        double run_inf_low_left = kInf;    // inf of left classic lowers, [t, u)
        for (std::int64_t u = t; u <= t + n.win_hi; ++u) {
          if (u >= t + n.win_lo) {
            best_vio = std::min(best_vio, std::min(run_inf_vio_left, rv[u]));
            const double sat_a =
                std::min(run_sup_sat_left, std::min(run_inf_low_left, rt[u].lower));
            const double sat_b = std::min(run_inf_low_left, rs[u]);
            best_sat = std::max(best_sat, std::max(sat_a, sat_b));
          }
          run_inf_vio_left = std::min(run_inf_vio_left, lv[u]);
          run_sup_sat_left = std::max(run_sup_sat_left, ls[u]);
          run_inf_low_left = std::min(run_inf_low_left, lt[u].lower);
        }
        vio[t] = std::max(best_vio, self[t].upper);
        sat[t] = best_sat;
      }
      return;
    }
  }
}

CausationOutput QuantitativeCausationMonitor::step(const PrefixView& view) {
  const auto expected = static_cast<std::size_t>(origin_ + local_b_ + 1);
  if (view.b_index() != expected) {
    throw NonContiguousStepError(
        "monitor expected prefix end " + std::to_string(expected) + ", got " +
        std::to_string(view.b_index()));
  }
  ++local_b_;
  table_.advance(view, local_b_, origin_);

  const std::int64_t horizon = compiled_->horizon_samples();
  if (local_b_ > horizon + 1 && steady_) {
    // distances are constant once no table column and no "current instant"
    // test can change
    last_.b = local_b_;
    return last_;
  }
  gather_sample(view);
  recompute_distances(local_b_);
  if (local_b_ >= horizon + 1) steady_ = true;

  const int root = compiled_->root();
  const double vio = vio_[static_cast<std::size_t>(root)][0];
  const double sat = sat_[static_cast<std::size_t>(root)][0];
  CausationOutput out;
  out.b = local_b_;
  out.vio_distance = vio;
  out.sat_distance = sat;
  out.derived_verdict = derive_bcaum(vio, sat, &out.boundary);
  out.running_upper = local_b_ == 0 ? vio : std::min(last_.running_upper, vio);
  out.running_lower = local_b_ == 0 ? sat : std::max(last_.running_lower, sat);
  last_ = out;
  return out;
}

std::vector<RobustnessInterval> reconstruct_clam(
    const std::vector<CausationOutput>& outputs) {
  std::vector<RobustnessInterval> result;
  result.reserve(outputs.size());
  for (const CausationOutput& o : outputs) {
    result.push_back({o.running_lower, o.running_upper});
  }
  return result;
}

}  // namespace stlmon
