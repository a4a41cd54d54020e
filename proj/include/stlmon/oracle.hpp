// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "stlmon/formula.hpp"
#include "stlmon/trace.hpp"

namespace stlmon {

/// Offline robust semantics over a complete sampled trace, anchored at
/// sample k. Deliberately the naive reference: every temporal window is a
/// full min/max scan over grid points. Values are extended reals; false has
/// robustness -inf. inf over an empty range is +inf, sup is -inf, which makes
/// the until clause at t = tau reduce to the right operand.
///
/// The trace must cover [k, k + horizon(f)] in samples.
double robustness(const Trace& trace, const Formula& f, std::size_t k);

/// Boolean satisfaction at sample k, evaluated independently of the robust
/// semantics (quantifiers instead of min/max). Same trace-length requirement.
bool satisfies(const Trace& trace, const Formula& f, std::size_t k);

/// Temporal window of `interval` in sample indices, snapped to the grid:
/// lo rounds up, hi rounds down, each with 1e-9 relative slack. Throws
/// TraceFormatError if snapping empties the interval.
std::pair<std::int64_t, std::int64_t> grid_window(const TimeInterval& interval,
                                                  double delta);

/// Formula horizon in samples on a delta grid.
std::int64_t horizon_samples(const Formula& f, double delta);

}  // namespace stlmon
