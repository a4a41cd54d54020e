// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stlmon/causation.hpp"
#include "stlmon/generator.hpp"
#include "stlmon/reset_monitor.hpp"

namespace stlmon {

enum class MonitorKind { Clam, Bcaum, Qcaum, Resm, All };
enum class OutputFormat { Json, Csv };

struct RunConfig {
  std::string spec_path;
  std::string trace_path;  // "-" reads a CSV stream from standard input
  MonitorKind monitor = MonitorKind::Clam;
  OutputFormat format = OutputFormat::Json;
  std::optional<double> delta_override;
  std::optional<std::string> bounds_path;  // JSON {"var": [min, max], ...}
  std::optional<std::string> plot_out;     // tidy CSV t,series,value
  bool sliding_kernel = false;
  bool evict_history = true;
  bool reset_on_satisfaction = true;
};

/// One emitted record. Fields a monitor does not produce stay unset and are
/// omitted from the output.
struct StepRecord {
  double t = 0.0;
  std::string monitor;
  std::optional<double> upper;
  std::optional<double> lower;
  std::optional<Verdict> verdict;
  std::optional<double> vio_distance;
  std::optional<double> sat_distance;
  std::optional<CausationVerdict> causation_verdict;
  std::optional<int> episode;  // reset monitor only
  std::int64_t monitor_time_ns = 0;
};

std::string record_to_json(const StepRecord& r);
std::string record_to_csv_row(const StepRecord& r);
std::string record_csv_header();

/// Exit codes: 0 clean run, 2 spec parse error, 3 trace format error.
/// Records go to `out`, diagnostics and the summary footer to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------------------
// Benchmark specifications and synthetic traces.

struct BenchSpec {
  std::string name;
  std::string formula_text;
  std::vector<std::string> variables;
};

/// Built-in specification suite: AFC1..AFC3 (air-to-fuel deviation) and AT1
/// (speed/RPM). Throws std::invalid_argument for unknown names.
const BenchSpec& bench_spec(const std::string& name);
std::vector<std::string> bench_spec_names();

/// Synthetic trace families used by the harness and tests.
/// "AT1": two speed/RPM excursion episodes; "AFC1"/"AFC2"/"AFC3": compliant
/// deviation signal with two out-of-band episodes; "FIG1": single-variable v
/// with two over-limit episodes (peaks 15 then 14).
Trace synth_trace(const std::string& name, std::size_t samples, double delta);

struct MonitorTiming {
  std::string monitor;
  double mean_ns = 0.0;
  double stdev_ns = 0.0;
  double total_ms = 0.0;
};

struct BenchReport {
  std::string spec;
  std::size_t samples = 0;
  std::vector<MonitorTiming> timings;
  int cross_check_failures = 0;
  int violation_episodes = 0;  // Boolean causation episodes seen
  int resets = 0;
};

/// Runs all four monitors over the trace, asserting the refinement
/// cross-checks on every step, and reports per-monitor timing.
BenchReport bench(const std::string& spec_name, const Trace& trace,
                  const DomainBounds& bounds = {});

std::string format_bench_report(const BenchReport& report);

// ---------------------------------------------------------------------------
// Step-locked differential run of all monitors with the refinement
// relations checked on every step; shared by bench, tests, and the
// acceptance suite.

struct CrossCheckStats {
  std::size_t steps = 0;
  std::size_t monotonicity_violations = 0;   // classic bounds moved wrong way
  std::size_t boolean_refinement_mismatch = 0;  // causation vs classic verdict
  std::size_t sign_refinement_mismatch = 0;     // distance signs vs causation
  std::size_t reconstruction_mismatch = 0;      // rebuilt interval != classic
  std::size_t epoch_sign_violations = 0;        // epoch non-emptiness vs signs
  std::size_t first_cause_misses = 0;           // first conclusive step not in epoch
  std::size_t verdict_regressions = 0;          // verdict left {T,F} again
  bool collapse_ok = true;                      // final interval == offline value
  double final_robustness = 0.0;
  std::vector<MonitorTiming> timings;           // clam/bcaum/qcaum/resm
  int causation_episodes = 0;                   // maximal runs of violation verdicts
  int resets = 0;

  bool all_ok() const {
    return monotonicity_violations == 0 && boolean_refinement_mismatch == 0 &&
           sign_refinement_mismatch == 0 && reconstruction_mismatch == 0 &&
           epoch_sign_violations == 0 && first_cause_misses == 0 &&
           verdict_regressions == 0 && collapse_ok;
  }
};

struct CrossCheckOptions {
  bool check_against_oracle = true;  // requires trace >= horizon + 1 samples
  bool run_epochs = true;            // Boolean causation and epoch checks
};

CrossCheckStats run_cross_checked(const Trace& trace, const Formula& formula,
                                  const DomainBounds& bounds = {},
                                  CrossCheckOptions options = {});

}  // namespace stlmon
