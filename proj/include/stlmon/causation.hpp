// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "stlmon/classic_monitor.hpp"

namespace stlmon {

/// Set of (atom id, sample instant) pairs that cause the current violation
/// or satisfaction of the specification.
struct Epoch {
  std::set<std::pair<int, std::int64_t>> pairs;

  bool contains_instant(std::int64_t t) const;
  bool empty() const { return pairs.empty(); }
  friend bool operator==(const Epoch&, const Epoch&) = default;
};

enum class CausationVerdict { Violation, Satisfaction, Irrelevant };

const char* causation_name(CausationVerdict v);

/// Violation / satisfaction epochs of the prefix, anchored at sample k.
/// Every level of the recursion is guarded by the strict sign of the
/// corresponding reachable-robustness bound; when the guard fails the epoch
/// is empty. Constants contribute nothing (they have no atoms).
Epoch violation_epoch(const PrefixView& view, const Formula& f, std::int64_t k,
                      const DomainBounds& bounds = {});
Epoch satisfaction_epoch(const PrefixView& view, const Formula& f,
                         std::int64_t k, const DomainBounds& bounds = {});

/// Boolean causation monitor: marks each instant as violation causation,
/// satisfaction causation, or irrelevant, by membership of (atom, b) in the
/// step's epoch. Non-monotonic: a causation verdict may be followed by
/// irrelevant again, which is what exposes the end of a violation episode.
///
/// The step itself only decides membership of the newest instant and epoch
/// emptiness; asking for a full epoch set materializes it on demand.
class BooleanCausationMonitor {
 public:
  explicit BooleanCausationMonitor(
      std::shared_ptr<const CompiledFormula> compiled, std::int64_t origin = 0,
      ClassicMonitor::Options options = ClassicMonitor::Options());

  CausationVerdict step(const PrefixView& view);

  CausationVerdict current() const { return last_; }
  bool violation_epoch_nonempty() const { return vio_nonempty_; }
  bool satisfaction_epoch_nonempty() const { return sat_nonempty_; }
  /// Materializes the full epoch of the consumed prefix (linear in its size).
  Epoch violation_epoch() const;
  Epoch satisfaction_epoch() const;
  const ClassicMonitor& classic() const { return classic_; }

 private:
  ClassicMonitor classic_;
  CausationVerdict last_ = CausationVerdict::Irrelevant;
  bool vio_nonempty_ = false;
  bool sat_nonempty_ = false;
  bool steady_ = false;
};

/// Epoch computation against an existing interval table (shared with the
/// classic monitor); anchor is a local instant.
Epoch violation_epoch_from_table(const IntervalTable& table, std::int64_t anchor);
Epoch satisfaction_epoch_from_table(const IntervalTable& table,
                                    std::int64_t anchor);

/// Membership of (any atom, instant) in the epoch, and epoch non-emptiness,
/// decided without materializing the set.
bool violation_epoch_contains(const IntervalTable& table, std::int64_t anchor,
                              std::int64_t instant);
bool satisfaction_epoch_contains(const IntervalTable& table, std::int64_t anchor,
                                 std::int64_t instant);
bool violation_epoch_nonempty(const IntervalTable& table, std::int64_t anchor);
bool satisfaction_epoch_nonempty(const IntervalTable& table, std::int64_t anchor);

/// Per-step output of the quantitative causation monitor.
struct CausationOutput {
  std::int64_t b = -1;          // local step index
  double vio_distance = kInf;   // distance from making b a violation cause
  double sat_distance = -kInf;  // dual, satisfaction side
  CausationVerdict derived_verdict = CausationVerdict::Irrelevant;
  bool boundary = false;        // a distance was exactly zero
  double running_upper = kInf;  // min of vio_distance over steps so far
  double running_lower = -kInf; // max of sat_distance over steps so far
};

/// Sign rules relating causation distances to the Boolean causation verdict.
/// Exact zeros carry no strict-sign information and map to Irrelevant with
/// the boundary flag set.
CausationVerdict derive_bcaum(double vio_distance, double sat_distance,
                              bool* boundary = nullptr);

/// Quantitative causation monitor. Each step reports how far the newest
/// sample is from being a violation or satisfaction cause of the
/// specification. Shares one interval table with the classic clauses: the
/// distance clauses read the same per-instant bounds the classic monitor
/// maintains, and the running min/max of the distances reconstructs the
/// classic interval exactly.
class QuantitativeCausationMonitor {
 public:
  struct Options {
    bool sliding_kernel = false;
  };

  explicit QuantitativeCausationMonitor(
      std::shared_ptr<const CompiledFormula> compiled, std::int64_t origin = 0);
  QuantitativeCausationMonitor(std::shared_ptr<const CompiledFormula> compiled,
                               std::int64_t origin, Options options);

  CausationOutput step(const PrefixView& view);

  const CausationOutput& current() const { return last_; }
  const IntervalTable& table() const { return table_; }

 private:
  void recompute_distances(std::int64_t local_b);
  void recompute_node(int node_index, std::int64_t lo, std::int64_t hi,
                      std::int64_t local_b);
  void recompute_all_defaults();
  void gather_sample(const PrefixView& view);

  std::shared_ptr<const CompiledFormula> compiled_;
  IntervalTable table_;
  std::int64_t origin_;
  std::int64_t local_b_ = -1;
  std::vector<std::vector<double>> vio_;  // per node, per instant
  std::vector<std::vector<double>> sat_;
  std::vector<double> sample_;            // newest sample row
  CausationOutput last_;
  bool steady_ = false;
};

/// Classic-interval stream rebuilt from causation outputs:
/// [running_lower, running_upper] per step.
std::vector<RobustnessInterval> reconstruct_clam(
    const std::vector<CausationOutput>& outputs);

}  // namespace stlmon
