// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stlmon/formula.hpp"
#include "stlmon/trace.hpp"

namespace stlmon {

/// One generated (formula, trace) pair for differential testing.
struct GenCase {
  std::string spec_text;
  FormulaPtr formula;
  std::vector<std::string> variables;
  double delta = 1.0;
  std::vector<std::vector<double>> samples;
  DomainBounds bounds;  // empty unless the case carries domain knowledge

  Trace make_trace() const;
};

/// Deterministic pseudo-random corpus: formula depth <= 4, temporal windows
/// <= 8 samples, piecewise-linear traces sampled to <= 64 points and long
/// enough to resolve the formula. Sample values are jittered so no atom
/// evaluates to exactly zero. Every block of ten cases contains an
/// until-rooted formula. Same seed, same corpus.
std::vector<GenCase> gen_suite(std::uint64_t seed, int count);

/// Uniform double in [lo, hi) from raw engine draws (portable across
/// standard libraries, unlike std::uniform_real_distribution).
double uniform_double(std::mt19937_64& rng, double lo, double hi);

}  // namespace stlmon
