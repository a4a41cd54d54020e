// SPDX-License-Identifier: Apache-2.0
#include "stlmon/reset_monitor.hpp"

#include <string>

#include "stlmon/errors.hpp"

namespace stlmon {

ResetMonitor::ResetMonitor(std::shared_ptr<const CompiledFormula> compiled)
    : ResetMonitor(std::move(compiled), Options()) {}

ResetMonitor::ResetMonitor(std::shared_ptr<const CompiledFormula> compiled,
                           Options options)
    : compiled_(std::move(compiled)), options_(options) {
  inner_ = std::make_unique<ClassicMonitor>(
      compiled_, 0, ClassicMonitor::Options{options_.sliding_kernel});
}

ResetMonitor::StepResult ResetMonitor::step(const PrefixView& view) {
  if (view.b_index() != static_cast<std::size_t>(next_b_)) {
    throw NonContiguousStepError("reset monitor expected prefix end " +
                                 std::to_string(next_b_) + ", got " +
                                 std::to_string(view.b_index()));
  }
  const std::int64_t b = next_b_++;

  StepResult result;
  result.interval = inner_->step(view);
  result.verdict = derive_verdict(result.interval);
  if (result.verdict == Verdict::False ||
      (result.verdict == Verdict::True && options_.reset_on_satisfaction)) {
    // conclusive: forget the partial signal, restart at the next sample as a
    // fresh time origin
    reset_instants_.push_back(b);
    if (result.verdict == Verdict::False) ++violation_episodes_;
    origin_ = b + 1;
    inner_ = std::make_unique<ClassicMonitor>(
        compiled_, origin_, ClassicMonitor::Options{options_.sliding_kernel});
    result.reset_here = true;
  }
  result.episode = violation_episodes_;
  return result;
}

}  // namespace stlmon
