// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "stlmon/formula.hpp"
#include "stlmon/interval.hpp"
#include "stlmon/trace.hpp"

namespace stlmon {

/// One formula node flattened for monitoring. Temporal windows are in sample
/// indices on the bound grid.
struct CompiledNode {
  FormulaKind kind = FormulaKind::FalseConst;
  int left = -1;
  int right = -1;
  std::int64_t win_lo = 0;  // window start, samples (temporal nodes)
  std::int64_t win_hi = 0;  // window end, samples
  int atom_id = -1;
  ExprPtr expr;             // atom expression
  double r_min = -kInf;     // a-priori atom bounds
  double r_max = kInf;
  std::int64_t window_end = 0;  // largest anchor instant this node is read at
  std::int64_t extent = 0;      // subtree horizon in samples
  RobustnessInterval apriori;   // value before any sample is pinned
};

/// Formula bound to a sampling grid and domain bounds: node list in
/// post-order (root last), windows snapped to the grid, per-atom a-priori
/// bounds resolved. Immutable; shared by all monitors of the same spec.
class CompiledFormula {
 public:
  /// `anchor_max` widens the root so instants [0, anchor_max] can be queried;
  /// monitors anchored at sample 0 use the default.
  CompiledFormula(const Formula& f, double delta, const DomainBounds& bounds,
                  const std::vector<std::string>& variables,
                  std::int64_t anchor_max = 0);

  const std::vector<CompiledNode>& nodes() const { return nodes_; }
  int root() const { return static_cast<int>(nodes_.size()) - 1; }
  std::int64_t horizon_samples() const { return horizon_samples_; }
  double delta() const { return delta_; }
  int atom_count() const { return atom_count_; }

 private:
  std::vector<CompiledNode> nodes_;
  std::int64_t horizon_samples_ = 0;
  double delta_ = 0.0;
  int atom_count_ = 0;
};

/// Dynamic side of the classic quantitative monitor: one reachable-robustness
/// interval per (node, instant) over each node's active window. Columns at or
/// before the consumed prefix hold pinned information, later columns the
/// a-priori interval. Updated incrementally: a new sample only touches
/// columns within each node's horizon of it.
class IntervalTable {
 public:
  struct Options {
    bool sliding_kernel = false;  // deque kernel for alw/ev window scans
  };

  explicit IntervalTable(std::shared_ptr<const CompiledFormula> compiled);
  IntervalTable(std::shared_ptr<const CompiledFormula> compiled, Options options);

  /// Consume the sample at index b of `view` (monitor-local index: column
  /// space starts at view sample `origin`). Contiguity enforced by callers.
  void advance(const PrefixView& view, std::int64_t local_b,
               std::int64_t origin);

  RobustnessInterval at(int node, std::int64_t t) const {
    return columns_[node][static_cast<std::size_t>(t)];
  }
  const std::vector<RobustnessInterval>& columns(int node) const {
    return columns_[node];
  }

  const CompiledFormula& compiled() const { return *compiled_; }
  std::int64_t last_b() const { return b_; }

  /// True once every column is pinned and no further sample can change them.
  bool frozen() const { return b_ > compiled_->horizon_samples(); }

 private:
  void recompute(int node_index, std::int64_t lo, std::int64_t hi);

  std::shared_ptr<const CompiledFormula> compiled_;
  Options options_;
  std::vector<std::vector<RobustnessInterval>> columns_;
  std::vector<double> scratch_lo_;
  std::vector<double> scratch_hi_;
  std::vector<double> out_lo_;
  std::vector<double> out_hi_;
  std::int64_t b_ = -1;
};

}  // namespace stlmon
