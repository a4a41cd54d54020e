// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stlmon/errors.hpp"
#include "stlmon/formula.hpp"

namespace stlmon {

/// Optional per-variable value ranges, keyed by variable name.
struct DomainBounds {
  std::map<std::string, std::pair<double, double>> by_name;

  bool empty() const { return by_name.empty(); }
  std::optional<std::pair<double, double>> lookup(const std::string& var) const;
};

class PrefixView;

/// Uniformly sampled, append-only multi-variable signal. Sample k lives at
/// time t0 + k*step. Old samples may be evicted once a retention window is
/// set; indices stay stable, evicted reads fail.
///
/// Concurrency contract: one writer; readers hold PrefixViews created after
/// the writer's append has completed (external synchronization).
class Trace {
 public:
  Trace(double step, std::vector<std::string> variables, double t0 = 0.0);

  double step() const { return step_; }
  double t0() const { return t0_; }
  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t size() const { return next_index_; }
  double time_at(std::size_t k) const { return t0_ + static_cast<double>(k) * step_; }

  /// Appends one sample vector, returns its index. The vector must carry one
  /// finite value per declared variable.
  std::size_t append(std::span<const double> values);

  double value(std::size_t var_index, std::size_t k) const;

  /// Keep only the most recent `samples` samples; pass nullopt to disable.
  void set_retention(std::optional<std::size_t> samples);

  std::size_t first_retained() const { return first_retained_; }

  /// View of the prefix ending at sample b (inclusive).
  PrefixView prefix(std::size_t b) const;
  /// View of everything appended so far; trace must be non-empty.
  PrefixView latest() const;

 private:
  friend class PrefixView;

  double step_;
  double t0_;
  std::vector<std::string> variables_;
  std::vector<double> data_;        // row-major, rows start at first_retained_
  std::size_t next_index_ = 0;      // number of samples ever appended
  std::size_t first_retained_ = 0;  // smallest index still accessible
  std::optional<std::size_t> retention_;

  void evict_front();
};

/// The partial signal seen so far: defined on sample indices [0, b_index],
/// undefined beyond. Cheap to copy, immutable.
class PrefixView {
 public:
  PrefixView(const Trace* trace, std::size_t b_index)
      : trace_(trace), b_(b_index) {}

  std::size_t b_index() const { return b_; }
  const Trace& trace() const { return *trace_; }
  double step() const { return trace_->step(); }

  /// Stored sample, no interpolation. Throws BeyondPrefixError past b
  /// (the not-yet-defined region) and EvictedError below the retention
  /// window.
  double value_at(std::size_t var_index, std::size_t k) const;
  double value_at(const std::string& var, std::size_t k) const;

 private:
  const Trace* trace_;
  std::size_t b_;
};

/// A-priori robustness range of a canonical atom over the variable box:
/// the interval extension of its expression. (-inf, +inf) when no bounds
/// are known.
std::pair<double, double> atom_bounds(const Atom& atom, const DomainBounds& bounds,
                                      const std::vector<std::string>& variables);

/// CSV trace input: header "time,var1,var2,...", one row per sample,
/// strictly increasing uniformly spaced times. `delta_override` forces the
/// sampling step instead of inferring it from the first two rows. Timestamps
/// must match k*delta within 1e-9*delta.
Trace read_trace_csv(std::istream& in,
                     std::optional<double> delta_override = std::nullopt);

/// Incremental CSV reader for streaming input; same format and validation
/// as read_trace_csv, one row at a time.
class CsvTraceReader {
 public:
  explicit CsvTraceReader(std::istream& in,
                          std::optional<double> delta_override = std::nullopt);

  const std::vector<std::string>& variables() const { return variables_; }

  /// Reads the next data row; returns false at end of input. `time_out` and
  /// `values_out` receive the parsed row.
  bool next(double& time_out, std::vector<double>& values_out);

  /// Sampling step; known after the second row (or up front when overridden).
  std::optional<double> delta() const { return delta_; }
  std::size_t rows_read() const { return rows_; }

 private:
  std::istream& in_;
  std::vector<std::string> variables_;
  std::optional<double> delta_;
  bool delta_forced_;
  double t0_ = 0.0;
  std::size_t rows_ = 0;
};

}  // namespace stlmon
