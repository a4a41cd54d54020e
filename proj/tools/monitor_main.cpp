// SPDX-License-Identifier: Apache-2.0
//
// Streaming STL monitor front end.
//
//   monitor --spec FILE --trace FILE|- --monitor clam|bcaum|qcaum|resm|all
//           --format json|csv [--delta R] [--bounds FILE] [--plot-out FILE]
//   monitor bench --name AFC1|AFC2|AFC3|AT1 --trace FILE
//   monitor synth --name FIG1|AT1|AFC1|AFC_OK --samples N [--delta R] --out FILE
//   monitor gen --seed S --count N --out DIR

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stlmon/generator.hpp"
#include "stlmon/harness.hpp"
#include "stlmon/trace.hpp"

namespace {

int run_bench(const std::string& name, const std::string& trace_path) {
  std::ifstream in(trace_path);
  if (!in) {
    std::cerr << "trace error: cannot open '" << trace_path << "'\n";
    return 3;
  }
  try {
    stlmon::Trace trace = stlmon::read_trace_csv(in);
    stlmon::BenchReport report = stlmon::bench(name, trace);
    std::cout << stlmon::format_bench_report(report);
    return report.cross_check_failures == 0 ? 0 : 1;
  } catch (const stlmon::TraceFormatError& e) {
    std::cerr << "trace error: " << e.what() << "\n";
    return 3;
  }
}

int run_synth(const std::string& name, std::size_t samples, double delta,
              const std::string& out_path) {
  try {
    stlmon::Trace trace = stlmon::synth_trace(name, samples, delta);
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot open '" << out_path << "'\n";
      return 1;
    }
    out << "time";
    for (const auto& v : trace.variables()) out << ',' << v;
    out << "\n";
    char buf[64];
    for (std::size_t k = 0; k < trace.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", trace.time_at(k));
      out << buf;
      for (std::size_t i = 0; i < trace.variables().size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", trace.value(i, k));
        out << ',' << buf;
      }
      out << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

int run_gen(std::uint64_t seed, int count, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto corpus = stlmon::gen_suite(seed, count);
  char buf[64];
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& c = corpus[i];
    std::ofstream spec(fs::path(out_dir) / ("case_" + std::to_string(i) + ".stl"));
    spec << c.spec_text << "\n";
    std::ofstream csv(fs::path(out_dir) / ("case_" + std::to_string(i) + ".csv"));
    csv << "time";
    for (const auto& v : c.variables) csv << ',' << v;
    csv << "\n";
    for (std::size_t k = 0; k < c.samples.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", static_cast<double>(k) * c.delta);
      csv << buf;
      for (double v : c.samples[k]) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        csv << ',' << buf;
      }
      csv << "\n";
    }
  }
  std::cout << "wrote " << corpus.size() << " cases to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming STL monitoring (classic, causation, reset)"};
  app.require_subcommand(0, 1);

  std::string spec_path;
  std::string trace_path;
  std::string monitor_name = "clam";
  std::string format_name = "json";
  double delta = 0.0;
  bool have_delta = false;
  std::string bounds_path;
  std::string plot_out;
  bool fast_window = false;
  bool no_evict = false;
  bool no_reset_on_sat = false;

  app.add_option("--spec", spec_path, "specification file (one formula)");
  app.add_option("--trace", trace_path, "trace CSV file, or - for stdin");
  app.add_option("--monitor", monitor_name, "clam|bcaum|qcaum|resm|all")
      ->check(CLI::IsMember({"clam", "bcaum", "qcaum", "resm", "all"}));
  app.add_option("--format", format_name, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--delta", delta, "sampling step override")
      ->each([&](const std::string&) { have_delta = true; });
  app.add_option("--bounds", bounds_path, "JSON domain bounds {var: [min,max]}");
  app.add_option("--plot-out", plot_out, "tidy CSV plot data output");
  app.add_flag("--fast-window", fast_window,
               "use the monotonic-deque window kernel");
  app.add_flag("--no-evict", no_evict, "retain full history (debugging)");
  app.add_flag("--no-reset-on-sat", no_reset_on_sat,
               "reset baseline only resets on violations");

  auto* bench_cmd = app.add_subcommand("bench", "run the benchmark spec suite");
  std::string bench_name;
  std::string bench_trace;
  bench_cmd->add_option("--name", bench_name, "AFC1|AFC2|AFC3|AT1")->required();
  bench_cmd->add_option("--trace", bench_trace, "trace CSV file")->required();

  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic trace CSV");
  std::string synth_name;
  std::size_t synth_samples = 0;
  double synth_delta = 1.0;
  std::string synth_out;
  synth_cmd->add_option("--name", synth_name, "FIG1|AT1|AFC1|AFC2|AFC3|AFC_OK")
      ->required();
  synth_cmd->add_option("--samples", synth_samples, "number of samples")
      ->required();
  synth_cmd->add_option("--delta", synth_delta, "sampling step");
  synth_cmd->add_option("--out", synth_out, "output CSV path")->required();

  auto* gen_cmd = app.add_subcommand("gen", "write a random test corpus");
  std::uint64_t gen_seed = 1;
  int gen_count = 10;
  std::string gen_out;
  gen_cmd->add_option("--seed", gen_seed, "corpus seed");
  gen_cmd->add_option("--count", gen_count, "number of cases");
  gen_cmd->add_option("--out", gen_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (*bench_cmd) {
    try {
      return run_bench(bench_name, bench_trace);
    } catch (const std::invalid_argument& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return 1;
    }
  }
  if (*synth_cmd) {
    return run_synth(synth_name, synth_samples, synth_delta, synth_out);
  }
  if (*gen_cmd) {
    return run_gen(gen_seed, gen_count, gen_out);
  }

  if (spec_path.empty() || trace_path.empty()) {
    std::cerr << "usage error: --spec and --trace are required\n";
    return 1;
  }

  stlmon::RunConfig config;
  config.spec_path = spec_path;
  config.trace_path = trace_path;
  config.monitor = monitor_name == "clam"    ? stlmon::MonitorKind::Clam
                   : monitor_name == "bcaum" ? stlmon::MonitorKind::Bcaum
                   : monitor_name == "qcaum" ? stlmon::MonitorKind::Qcaum
                   : monitor_name == "resm"  ? stlmon::MonitorKind::Resm
                                             : stlmon::MonitorKind::All;
  config.format = format_name == "csv" ? stlmon::OutputFormat::Csv
                                       : stlmon::OutputFormat::Json;
  if (have_delta) config.delta_override = delta;
  if (!bounds_path.empty()) config.bounds_path = bounds_path;
  if (!plot_out.empty()) config.plot_out = plot_out;
  config.sliding_kernel = fast_window;
  config.evict_history = !no_evict;
  config.reset_on_satisfaction = !no_reset_on_sat;

  return stlmon::run(config, std::cout, std::cerr);
}
