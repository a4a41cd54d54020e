// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>

#include "stlmon/compiled.hpp"
#include "stlmon/interval.hpp"

namespace stlmon {

/// Classic interval-valued online monitor. Each step consumes one more
/// sample and returns the reachable-robustness interval of the formula
/// anchored at the monitor's origin; the upper bound never increases and the
/// lower bound never decreases along a run.
///
/// Single consumer while stepping; may be moved between threads between
/// steps.
class ClassicMonitor {
 public:
  struct Options {
    bool sliding_kernel = false;
  };

  explicit ClassicMonitor(std::shared_ptr<const CompiledFormula> compiled,
                          std::int64_t origin = 0);
  ClassicMonitor(std::shared_ptr<const CompiledFormula> compiled,
                 std::int64_t origin, Options options);

  /// Steps to the view's prefix end. The view must extend the previous one
  /// by exactly one sample (or be the origin sample on the first call).
  RobustnessInterval step(const PrefixView& view);

  RobustnessInterval current() const { return last_; }
  Verdict verdict() const { return derive_verdict(last_); }
  std::int64_t origin() const { return origin_; }
  std::int64_t steps() const { return local_b_ + 1; }

  const IntervalTable& table() const { return table_; }

 private:
  std::shared_ptr<const CompiledFormula> compiled_;
  IntervalTable table_;
  std::int64_t origin_;
  std::int64_t local_b_ = -1;
  RobustnessInterval last_;
};

/// Test helper: streams the whole trace through a ClassicMonitor and checks
/// that the interval collapses to the offline robustness at anchor 0 with
/// exact equality. Throws std::logic_error naming the first instant where
/// the offline value escapes the monitor interval (or the final mismatch).
void clam_offline_check(const Trace& trace, const Formula& f,
                        const DomainBounds& bounds = {});

}  // namespace stlmon
