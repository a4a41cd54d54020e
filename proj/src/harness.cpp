// SPDX-License-Identifier: Apache-2.0
#include "stlmon/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "stlmon/errors.hpp"
#include "stlmon/oracle.hpp"
#include "stlmon/parser.hpp"

namespace stlmon {

namespace {

std::string format_num(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// JSON has no infinities; non-finite values go out as strings.
void append_json_number(std::string& out, double v) {
  if (std::isfinite(v)) {
    out += format_num(v);
  } else {
    out += '"';
    out += format_num(v);
    out += '"';
  }
}

std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct TimingAccumulator {
  double sum = 0.0;
  double sumsq = 0.0;
  std::size_t n = 0;

  void add(double ns) {
    sum += ns;
    sumsq += ns * ns;
    ++n;
  }
  MonitorTiming finish(std::string name) const {
    MonitorTiming t;
    t.monitor = std::move(name);
    if (n > 0) {
      t.mean_ns = sum / static_cast<double>(n);
      const double var =
          std::max(0.0, sumsq / static_cast<double>(n) - t.mean_ns * t.mean_ns);
      t.stdev_ns = std::sqrt(var);
      t.total_ms = sum / 1e6;
    }
    return t;
  }
};

}  // namespace

std::string record_csv_header() {
  return "t,monitor,upper,lower,verdict,vio_distance,sat_distance,"
         "causation_verdict,episode,monitor_time_ns";
}

std::string record_to_csv_row(const StepRecord& r) {
  std::string out = format_num(r.t);
  out += ',';
  out += r.monitor;
  out += ',';
  if (r.upper) out += format_num(*r.upper);
  out += ',';
  if (r.lower) out += format_num(*r.lower);
  out += ',';
  if (r.verdict) out += verdict_name(*r.verdict);
  out += ',';
  if (r.vio_distance) out += format_num(*r.vio_distance);
  out += ',';
  if (r.sat_distance) out += format_num(*r.sat_distance);
  out += ',';
  if (r.causation_verdict) out += causation_name(*r.causation_verdict);
  out += ',';
  if (r.episode) out += std::to_string(*r.episode);
  out += ',';
  out += std::to_string(r.monitor_time_ns);
  return out;
}

std::string record_to_json(const StepRecord& r) {
  std::string out = "{\"t\":";
  append_json_number(out, r.t);
  out += ",\"monitor\":\"";
  out += r.monitor;
  out += '"';
  if (r.upper) {
    out += ",\"upper\":";
    append_json_number(out, *r.upper);
  }
  if (r.lower) {
    out += ",\"lower\":";
    append_json_number(out, *r.lower);
  }
  if (r.verdict) {
    out += ",\"verdict\":\"";
    out += verdict_name(*r.verdict);
    out += '"';
  }
  if (r.vio_distance) {
    out += ",\"vio_distance\":";
    append_json_number(out, *r.vio_distance);
  }
  if (r.sat_distance) {
    out += ",\"sat_distance\":";
    append_json_number(out, *r.sat_distance);
  }
  if (r.causation_verdict) {
    out += ",\"causation_verdict\":\"";
    out += causation_name(*r.causation_verdict);
    out += '"';
  }
  if (r.episode) {
    out += ",\"episode\":";
    out += std::to_string(*r.episode);
  }
  out += ",\"monitor_time_ns\":";
  out += std::to_string(r.monitor_time_ns);
  out += '}';
  return out;
}

namespace {

DomainBounds load_bounds(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw TraceFormatError("cannot open bounds file '" + path + "'");
  }
  nlohmann::json j;
  in >> j;
  if (!j.is_object()) {
    throw TraceFormatError("bounds file must hold a JSON object");
  }
  DomainBounds bounds;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& arr = it.value();
    if (!arr.is_array() || arr.size() != 2) {
      throw TraceFormatError("bounds entry for '" + it.key() +
                             "' must be [min, max]");
    }
    bounds.by_name[it.key()] = {arr[0].get<double>(), arr[1].get<double>()};
  }
  return bounds;
}

struct MonitorSet {
  std::shared_ptr<const CompiledFormula> compiled;
  std::unique_ptr<ClassicMonitor> clam;
  std::unique_ptr<BooleanCausationMonitor> bcaum;
  std::unique_ptr<QuantitativeCausationMonitor> qcaum;
  std::unique_ptr<ResetMonitor> resm;
};

MonitorSet build_monitors(const Formula& formula, double delta,
                          const DomainBounds& bounds,
                          const std::vector<std::string>& variables,
                          MonitorKind kind, const RunConfig& config) {
  MonitorSet set;
  set.compiled =
      std::make_shared<const CompiledFormula>(formula, delta, bounds, variables);
  const ClassicMonitor::Options classic_opts{config.sliding_kernel};
  if (kind == MonitorKind::Clam || kind == MonitorKind::All) {
    set.clam = std::make_unique<ClassicMonitor>(set.compiled, 0, classic_opts);
  }
  if (kind == MonitorKind::Bcaum || kind == MonitorKind::All) {
    set.bcaum =
        std::make_unique<BooleanCausationMonitor>(set.compiled, 0, classic_opts);
  }
  if (kind == MonitorKind::Qcaum || kind == MonitorKind::All) {
    set.qcaum = std::make_unique<QuantitativeCausationMonitor>(
        set.compiled, 0,
        QuantitativeCausationMonitor::Options{config.sliding_kernel});
  }
  if (kind == MonitorKind::Resm || kind == MonitorKind::All) {
    set.resm = std::make_unique<ResetMonitor>(
        set.compiled,
        ResetMonitor::Options{config.reset_on_satisfaction, config.sliding_kernel});
  }
  return set;
}

const char* monitor_name(MonitorKind k) {
  switch (k) {
    case MonitorKind::Clam:
      return "clam";
    case MonitorKind::Bcaum:
      return "bcaum";
    case MonitorKind::Qcaum:
      return "qcaum";
    case MonitorKind::Resm:
      return "resm";
    case MonitorKind::All:
      return "all";
  }
  return "clam";
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  // spec file
  std::ifstream spec_in(config.spec_path);
  if (!spec_in) {
    err << "spec error: cannot open '" << config.spec_path << "'\n";
    return 2;
  }
  std::stringstream spec_text;
  spec_text << spec_in.rdbuf();

  DomainBounds bounds;
  if (config.bounds_path) {
    try {
      bounds = load_bounds(*config.bounds_path);
    } catch (const std::exception& e) {
      err << "trace error: " << e.what() << "\n";
      return 3;
    }
  }

  std::ifstream trace_file;
  std::istream* trace_in = &std::cin;
  if (config.trace_path != "-") {
    trace_file.open(config.trace_path);
    if (!trace_file) {
      err << "trace error: cannot open '" << config.trace_path << "'\n";
      return 3;
    }
    trace_in = &trace_file;
  }
  const bool stream_mode = config.trace_path == "-";

  std::ofstream plot;
  if (config.plot_out) {
    plot.open(*config.plot_out);
    if (!plot) {
      err << "trace error: cannot open plot output '" << *config.plot_out << "'\n";
      return 3;
    }
    plot << "t,series,value\n";
  }

  int exit_code = 0;
  try {
    CsvTraceReader reader(*trace_in, config.delta_override);

    FormulaPtr formula;
    try {
      formula = parse_formula(spec_text.str(), reader.variables());
    } catch (const ParseError& e) {
      err << "spec error: " << config.spec_path << ":" << e.what() << "\n";
      return 2;
    }

    if (config.format == OutputFormat::Csv) {
      out << record_csv_header() << "\n";
    }

    // rows buffered until the sampling step is known (second row in stream
    // mode), then monitors catch up
    std::optional<Trace> trace;
    MonitorSet monitors;
    std::size_t stepped = 0;
    std::vector<std::vector<double>> pending;
    double t_first = 0.0;

    std::size_t verdict_transitions = 0;
    std::optional<Verdict> last_verdict;
    int causation_episodes = 0;
    bool in_causation_episode = false;
    int resets = 0;

    auto emit = [&](const StepRecord& r) {
      if (config.format == OutputFormat::Json) {
        out << record_to_json(r) << "\n";
      } else {
        out << record_to_csv_row(r) << "\n";
      }
      if (stream_mode) out.flush();
    };

    auto plot_row = [&](double t, const char* series, double value) {
      if (!plot.is_open()) return;
      plot << format_num(t) << ',' << series << ',' << format_num(value) << "\n";
    };

    // one record per sample; the active monitors fill their fields and the
    // step time adds up across them
    auto step_monitors = [&](const std::vector<double>& row) {
      const std::size_t k = trace->append(row);
      const PrefixView view = trace->prefix(k);
      const double t = trace->time_at(k);

      StepRecord r;
      r.t = t;
      r.monitor = monitor_name(config.monitor);
      std::int64_t elapsed = 0;

      if (monitors.clam) {
        const std::int64_t t0 = now_ns();
        const RobustnessInterval iv = monitors.clam->step(view);
        elapsed += now_ns() - t0;
        r.upper = iv.upper;
        r.lower = iv.lower;
        r.verdict = derive_verdict(iv);
      }
      if (monitors.bcaum) {
        const std::int64_t t0 = now_ns();
        r.causation_verdict = monitors.bcaum->step(view);
        elapsed += now_ns() - t0;
      }
      if (monitors.qcaum) {
        const std::int64_t t0 = now_ns();
        const CausationOutput o = monitors.qcaum->step(view);
        elapsed += now_ns() - t0;
        // the running envelope equals the classic interval, so the fields
        // are consistent whichever monitor fills them
        if (!r.upper) r.upper = o.running_upper;
        if (!r.lower) r.lower = o.running_lower;
        r.vio_distance = o.vio_distance;
        r.sat_distance = o.sat_distance;
        if (!r.causation_verdict) r.causation_verdict = o.derived_verdict;
        plot_row(t, "vio_distance", o.vio_distance);
        plot_row(t, "sat_distance", o.sat_distance);
      }
      if (monitors.resm) {
        const std::int64_t t0 = now_ns();
        const ResetMonitor::StepResult s = monitors.resm->step(view);
        elapsed += now_ns() - t0;
        r.episode = s.episode;
        if (!monitors.clam && config.monitor == MonitorKind::Resm) {
          r.upper = s.interval.upper;
          r.lower = s.interval.lower;
          r.verdict = s.verdict;
        }
        resets = static_cast<int>(monitors.resm->reset_instants().size());
      }

      r.monitor_time_ns = elapsed;
      emit(r);
      if (r.upper) plot_row(t, "upper", *r.upper);
      if (r.lower) plot_row(t, "lower", *r.lower);
      if (r.verdict) {
        if (last_verdict && *last_verdict != *r.verdict) ++verdict_transitions;
        last_verdict = r.verdict;
      }
      if (r.causation_verdict) {
        const bool vio = *r.causation_verdict == CausationVerdict::Violation;
        if (vio && !in_causation_episode) ++causation_episodes;
        in_causation_episode = vio;
      }
      ++stepped;
    };

    double time = 0.0;
    std::vector<double> row;
    while (reader.next(time, row)) {
      if (reader.rows_read() == 1) t_first = time;
      if (!trace) {
        if (reader.delta()) {
          trace.emplace(*reader.delta(), reader.variables(), t_first);
          monitors = build_monitors(*formula, *reader.delta(), bounds,
                                    reader.variables(), config.monitor, config);
          if (config.evict_history) {
            trace->set_retention(static_cast<std::size_t>(
                                     monitors.compiled->horizon_samples()) +
                                 1);
          }
          for (const auto& p : pending) step_monitors(p);
          pending.clear();
          step_monitors(row);
        } else {
          pending.push_back(row);
        }
      } else {
        step_monitors(row);
      }
    }
    if (!trace) {
      if (pending.empty()) {
        err << "trace error: empty trace: no data rows\n";
        return 3;
      }
      err << "trace error: cannot infer sampling step from a single row; pass "
             "--delta\n";
      return 3;
    }

    err << "summary: samples=" << stepped
        << " verdict_transitions=" << verdict_transitions;
    if (last_verdict) {
      err << " final_verdict=" << verdict_name(*last_verdict);
    }
    err << " causation_episodes=" << causation_episodes << " resets=" << resets
        << "\n";
  } catch (const TraceFormatError& e) {
    err << "trace error: " << e.what() << "\n";
    exit_code = 3;
  } catch (const ParseError& e) {
    err << "spec error: " << e.what() << "\n";
    exit_code = 2;
  }
  return exit_code;
}

// ---------------------------------------------------------------------------

const BenchSpec& bench_spec(const std::string& name) {
  static const std::vector<BenchSpec> specs = {
      {"AFC1", "alw_[10,50] (abs(AF - AFref) < 0.1)", {"AF", "AFref"}},
      {"AFC2", "alw_[10,48.5] (ev_[0,1.5] (abs(AF - AFref) < 0.08))",
       {"AF", "AFref"}},
      {"AFC3",
       "alw_[10,48] (abs(AF - AFref) > 0.08 -> ev_[0,2] (abs(AF - AFref) < "
       "0.08))",
       {"AF", "AFref"}},
      {"AT1", "alw_[0,27] (speed > 50 -> ev_[1,3] (RPM < 3000))",
       {"speed", "RPM"}},
  };
  for (const auto& s : specs) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown benchmark spec '" + name +
                              "' (expected AFC1, AFC2, AFC3 or AT1)");
}

std::vector<std::string> bench_spec_names() {
  return {"AFC1", "AFC2", "AFC3", "AT1"};
}

namespace {

double fig1_speed(double t) {
  if (t < 20.0) return 2.0;
  if (t < 25.0) return 10.5 + (t - 20.0) * 0.9;   // ramp to the peak
  if (t <= 30.0) return 15.0;
  if (t < 35.0) return 15.0 - (t - 30.0) * 1.2;   // recovery, 9 at t=35
  if (t < 40.0) return 9.0;
  if (t < 45.0) return 14.0;                      // second, milder episode
  return 2.0;
}

bool at1_excursion(double t) {
  return (t >= 5.0 && t < 9.5) || (t >= 15.0 && t < 19.5);
}

double afc_deviation(double t) {
  if (t >= 15.0 && t < 18.0) return 0.45;
  if (t >= 25.0 && t < 28.0) return 0.3;
  return 0.02;
}

}  // namespace

Trace synth_trace(const std::string& name, std::size_t samples, double delta) {
  if (samples == 0) {
    throw TraceFormatError("synthetic trace needs at least one sample");
  }
  if (name == "FIG1") {
    Trace trace(delta, {"v"});
    for (std::size_t k = 0; k < samples; ++k) {
      const double t = static_cast<double>(k) * delta;
      const double v[] = {fig1_speed(t)};
      trace.append(v);
    }
    return trace;
  }
  if (name == "AT1") {
    Trace trace(delta, {"speed", "RPM"});
    for (std::size_t k = 0; k < samples; ++k) {
      const double t = static_cast<double>(k) * delta;
      const bool hot = at1_excursion(t);
      const double v[] = {hot ? 60.0 : 40.0, hot ? 4000.0 : 2000.0};
      trace.append(v);
    }
    return trace;
  }
  if (name == "AFC1" || name == "AFC2" || name == "AFC3" || name == "AFC_OK") {
    Trace trace(delta, {"AF", "AFref"});
    for (std::size_t k = 0; k < samples; ++k) {
      const double t = static_cast<double>(k) * delta;
      const double dev = name == "AFC_OK" ? 0.02 : afc_deviation(t);
      const double v[] = {14.7 + dev, 14.7};
      trace.append(v);
    }
    return trace;
  }
  throw std::invalid_argument("unknown synthetic trace '" + name + "'");
}

CrossCheckStats run_cross_checked(const Trace& trace, const Formula& formula,
                                  const DomainBounds& bounds,
                                  CrossCheckOptions options) {
  CrossCheckStats stats;
  auto compiled = std::make_shared<const CompiledFormula>(
      formula, trace.step(), bounds, trace.variables());

  double oracle_value = 0.0;
  if (options.check_against_oracle) {
    oracle_value = robustness(trace, formula, 0);
    stats.final_robustness = oracle_value;
  }

  ClassicMonitor clam(compiled);
  QuantitativeCausationMonitor qcaum(compiled);
  ResetMonitor resm(compiled);
  std::unique_ptr<BooleanCausationMonitor> bcaum;
  if (options.run_epochs) {
    bcaum = std::make_unique<BooleanCausationMonitor>(compiled);
  }

  TimingAccumulator clam_time, bcaum_time, qcaum_time, resm_time;

  RobustnessInterval prev{-kInf, kInf};
  Verdict prev_verdict = Verdict::Unknown;
  bool saw_vio = false;
  bool saw_sat = false;
  bool was_false = false;
  bool was_true = false;
  bool in_episode = false;
  RobustnessInterval last{};

  for (std::size_t b = 0; b < trace.size(); ++b) {
    const PrefixView view = trace.prefix(b);
    ++stats.steps;

    std::int64_t t0 = now_ns();
    const RobustnessInterval iv = clam.step(view);
    clam_time.add(static_cast<double>(now_ns() - t0));
    last = iv;

    t0 = now_ns();
    const CausationOutput out = qcaum.step(view);
    qcaum_time.add(static_cast<double>(now_ns() - t0));

    t0 = now_ns();
    const ResetMonitor::StepResult rs = resm.step(view);
    resm_time.add(static_cast<double>(now_ns() - t0));
    (void)rs;

    CausationVerdict cv = CausationVerdict::Irrelevant;
    if (bcaum) {
      t0 = now_ns();
      cv = bcaum->step(view);
      bcaum_time.add(static_cast<double>(now_ns() - t0));
    }

    // classic bounds shrink monotonically
    if (b > 0 && (iv.upper > prev.upper || iv.lower < prev.lower)) {
      ++stats.monotonicity_violations;
    }
    prev = iv;

    // a conclusive classic verdict never reopens
    const Verdict v = derive_verdict(iv);
    if (b > 0 && prev_verdict != Verdict::Unknown && v != prev_verdict) {
      ++stats.verdict_regressions;
    }
    prev_verdict = v;

    if (bcaum) {
      const bool first_false = v == Verdict::False && !was_false;
      const bool first_true = v == Verdict::True && !was_true;
      was_false = was_false || v == Verdict::False;
      was_true = was_true || v == Verdict::True;

      // Boolean causation history reproduces the classic verdict
      saw_vio = saw_vio || cv == CausationVerdict::Violation;
      saw_sat = saw_sat || cv == CausationVerdict::Satisfaction;
      const bool match = (v == Verdict::False) == saw_vio &&
                         (v == Verdict::True) == saw_sat;
      if (!match) ++stats.boolean_refinement_mismatch;

      // the step that makes the verdict conclusive enters the epoch
      if (first_false && cv != CausationVerdict::Violation) {
        ++stats.first_cause_misses;
      }
      if (first_true && cv != CausationVerdict::Satisfaction) {
        ++stats.first_cause_misses;
      }

      // epoch non-emptiness carries the strict bound signs
      const bool de = bcaum->violation_epoch_nonempty();
      const bool se = bcaum->satisfaction_epoch_nonempty();
      if (de && !(iv.upper < 0.0)) ++stats.epoch_sign_violations;
      if (se && !(iv.lower > 0.0)) ++stats.epoch_sign_violations;
      if (!de && !se && !(iv.upper > 0.0 && iv.lower < 0.0)) {
        ++stats.epoch_sign_violations;
      }

      // distance signs imply the Boolean causation verdict
      if (out.vio_distance != 0.0 && out.sat_distance != 0.0) {
        if (out.vio_distance < 0.0 && cv != CausationVerdict::Violation) {
          ++stats.sign_refinement_mismatch;
        }
        if (out.sat_distance > 0.0 && cv != CausationVerdict::Satisfaction) {
          ++stats.sign_refinement_mismatch;
        }
        if (out.vio_distance > 0.0 && out.sat_distance < 0.0 &&
            cv != CausationVerdict::Irrelevant) {
          ++stats.sign_refinement_mismatch;
        }
      }

      const bool vio_now = cv == CausationVerdict::Violation;
      if (vio_now && !in_episode) ++stats.causation_episodes;
      in_episode = vio_now;
    }

    // the classic interval is exactly the running envelope of the distances
    if (out.running_upper != iv.upper || out.running_lower != iv.lower) {
      ++stats.reconstruction_mismatch;
    }
  }

  if (options.check_against_oracle) {
    stats.collapse_ok =
        last.lower == last.upper && last.lower == oracle_value;
  }
  stats.resets = static_cast<int>(resm.reset_instants().size());

  stats.timings.push_back(clam_time.finish("clam"));
  if (bcaum) stats.timings.push_back(bcaum_time.finish("bcaum"));
  stats.timings.push_back(qcaum_time.finish("qcaum"));
  stats.timings.push_back(resm_time.finish("resm"));
  return stats;
}

BenchReport bench(const std::string& spec_name, const Trace& trace,
                  const DomainBounds& bounds) {
  const BenchSpec& spec = bench_spec(spec_name);
  for (const auto& var : spec.variables) {
    bool found = false;
    for (const auto& have : trace.variables()) {
      if (have == var) found = true;
    }
    if (!found) {
      throw TraceFormatError("trace is missing variable '" + var +
                             "' required by " + spec_name);
    }
  }
  FormulaPtr formula = parse_formula(spec.formula_text, trace.variables());

  CrossCheckOptions options;
  options.check_against_oracle =
      static_cast<std::int64_t>(trace.size()) >
      horizon_samples(*formula, trace.step());
  CrossCheckStats stats = run_cross_checked(trace, *formula, bounds, options);

  BenchReport report;
  report.spec = spec_name;
  report.samples = stats.steps;
  report.timings = stats.timings;
  report.violation_episodes = stats.causation_episodes;
  report.resets = stats.resets;
  report.cross_check_failures = static_cast<int>(
      stats.monotonicity_violations + stats.boolean_refinement_mismatch +
      stats.sign_refinement_mismatch + stats.reconstruction_mismatch +
      stats.epoch_sign_violations + stats.first_cause_misses +
      stats.verdict_regressions + (stats.collapse_ok ? 0 : 1));
  return report;
}

std::string format_bench_report(const BenchReport& report) {
  std::string out = "spec " + report.spec + ": " +
                    std::to_string(report.samples) + " samples, " +
                    std::to_string(report.violation_episodes) +
                    " violation episodes, " + std::to_string(report.resets) +
                    " resets, cross-checks " +
                    (report.cross_check_failures == 0 ? "ok" : "FAILED") + "\n";
  for (const auto& t : report.timings) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "  %-6s mean %.0f ns/step  stdev %.0f ns  total %.2f ms\n",
                  t.monitor.c_str(), t.mean_ns, t.stdev_ns, t.total_ms);
    out += buf;
  }
  return out;
}

}  // namespace stlmon
