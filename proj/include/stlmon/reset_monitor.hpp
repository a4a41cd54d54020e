// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "stlmon/classic_monitor.hpp"

namespace stlmon {

/// Baseline monitor-with-reset: runs the classic monitor until it concludes,
/// then records the instant, forgets the partial signal, and restarts at the
/// next sample as a fresh time origin against the same formula. Between two
/// resets the outputs are plain classic-monitor outputs (monotone per
/// episode).
class ResetMonitor {
 public:
  struct Options {
    bool reset_on_satisfaction = true;  // also reset when the verdict is True
    bool sliding_kernel = false;
  };

  struct StepResult {
    RobustnessInterval interval;
    Verdict verdict = Verdict::Unknown;
    int episode = 0;      // violation episodes concluded so far
    bool reset_here = false;
  };

  explicit ResetMonitor(std::shared_ptr<const CompiledFormula> compiled);
  ResetMonitor(std::shared_ptr<const CompiledFormula> compiled, Options options);

  StepResult step(const PrefixView& view);

  int violation_episodes() const { return violation_episodes_; }
  const std::vector<std::int64_t>& reset_instants() const {
    return reset_instants_;
  }

 private:
  std::shared_ptr<const CompiledFormula> compiled_;
  Options options_;
  std::unique_ptr<ClassicMonitor> inner_;
  std::int64_t origin_ = 0;
  std::int64_t next_b_ = 0;
  std::vector<std::int64_t> reset_instants_;
  int violation_episodes_ = 0;
};

}  // namespace stlmon
