// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "stlmon/generator.hpp"
#include "stlmon/harness.hpp"
#include "stlmon/parser.hpp"

using namespace stlmon;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

std::string normalize_number(const std::string& s) {
  if (s == "inf" || s == "-inf") return s;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", std::strtod(s.c_str(), nullptr));
  return buf;
}

using FieldMap = std::map<std::string, std::string>;

std::vector<FieldMap> parse_json_lines(const std::string& text) {
  std::vector<FieldMap> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    FieldMap row;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_number()) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", it.value().get<double>());
        row[it.key()] = buf;
      } else {
        row[it.key()] = it.value().get<std::string>();
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<FieldMap> parse_csv(const std::string& text) {
  std::vector<FieldMap> rows;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(field);
        field.clear();
      } else {
        field += c;
      }
    }
    fields.push_back(field);
    if (first) {
      header = fields;
      first = false;
      continue;
    }
    FieldMap row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].empty()) continue;
      const std::string& key = header[i];
      if (key == "monitor" || key == "verdict" || key == "causation_verdict") {
        row[key] = fields[i];
      } else {
        row[key] = normalize_number(fields[i]);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("generated corpora are reproducible and shaped as promised") {
  auto a = gen_suite(1, 30);
  auto b = gen_suite(1, 30);
  REQUIRE(a.size() == 30);
  int until_rooted = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].spec_text == b[i].spec_text);
    CHECK(a[i].samples == b[i].samples);
    CHECK(a[i].samples.size() <= 64);
    const double h = horizon(*a[i].formula);
    CHECK(h <= 32.0);
    CHECK(a[i].samples.size() >= static_cast<std::size_t>(h) + 1);
    if (a[i].formula->kind == FormulaKind::Until) ++until_rooted;
  }
  CHECK(until_rooted >= 3);  // one per block of ten

  auto c = gen_suite(2, 30);
  bool any_difference = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    any_difference = any_difference || c[i].spec_text != a[i].spec_text;
  }
  CHECK(any_difference);
}

TEST_CASE("json-lines and csv runs agree field for field") {
  fs::path spec = write_temp("stlmon_spec.stl", "alw_[0,2] (x > 0)\n");
  fs::path trace = write_temp("stlmon_trace.csv", "time,x\n0,1\n1,2\n2,-1\n");

  RunConfig config;
  config.spec_path = spec.string();
  config.trace_path = trace.string();
  config.monitor = MonitorKind::All;

  std::ostringstream json_out, err;
  config.format = OutputFormat::Json;
  REQUIRE(run(config, json_out, err) == 0);

  std::ostringstream csv_out;
  config.format = OutputFormat::Csv;
  REQUIRE(run(config, csv_out, err) == 0);

  auto json_rows = parse_json_lines(json_out.str());
  auto csv_rows = parse_csv(csv_out.str());
  REQUIRE(json_rows.size() == csv_rows.size());
  REQUIRE(json_rows.size() == 3);  // one record per sample
  for (std::size_t i = 0; i < json_rows.size(); ++i) {
    FieldMap a = json_rows[i];
    FieldMap b = csv_rows[i];
    // step timing is measured anew per run
    a.erase("monitor_time_ns");
    b.erase("monitor_time_ns");
    CHECK(a == b);
  }
}

TEST_CASE("final records of the window example") {
  fs::path spec = write_temp("stlmon_spec2.stl", "alw_[0,2] (x > 0)\n");
  fs::path trace = write_temp("stlmon_trace2.csv", "time,x\n0,1\n1,2\n2,-1\n");

  RunConfig config;
  config.spec_path = spec.string();
  config.trace_path = trace.string();
  config.monitor = MonitorKind::Clam;
  std::ostringstream out, err;
  REQUIRE(run(config, out, err) == 0);
  auto rows = parse_json_lines(out.str());
  REQUIRE(rows.size() == 3);
  CHECK(rows[2]["verdict"] == "false");
  CHECK(rows[2]["upper"] == "-1");
  CHECK(rows[0].count("vio_distance") == 0);  // not produced by this monitor

  config.monitor = MonitorKind::Bcaum;
  std::ostringstream out2;
  REQUIRE(run(config, out2, err) == 0);
  auto rows2 = parse_json_lines(out2.str());
  CHECK(rows2[2]["causation_verdict"] == "vio");
  CHECK(rows2[2].count("verdict") == 0);

  // all monitors merge into the per-sample record
  config.monitor = MonitorKind::All;
  std::ostringstream out3;
  REQUIRE(run(config, out3, err) == 0);
  auto rows3 = parse_json_lines(out3.str());
  REQUIRE(rows3.size() == 3);
  CHECK(rows3[2]["verdict"] == "false");
  CHECK(rows3[2]["causation_verdict"] == "vio");
  CHECK(rows3[2]["vio_distance"] == "-1");
  CHECK(rows3[2]["episode"] == "1");
}

TEST_CASE("spec errors exit 2, trace errors exit 3") {
  fs::path bad_spec = write_temp("stlmon_bad.stl", "alw_[2,1] (x > 0)\n");
  fs::path trace = write_temp("stlmon_trace3.csv", "time,x\n0,1\n1,2\n");
  fs::path empty_trace = write_temp("stlmon_empty.csv", "time,x\n");
  fs::path good_spec = write_temp("stlmon_good.stl", "x > 0\n");

  RunConfig config;
  config.trace_path = trace.string();
  config.spec_path = bad_spec.string();
  std::ostringstream out, err;
  CHECK(run(config, out, err) == 2);

  config.spec_path = good_spec.string();
  config.trace_path = empty_trace.string();
  std::ostringstream out2, err2;
  CHECK(run(config, out2, err2) == 3);
  CHECK(err2.str().find("empty trace") != std::string::npos);

  config.trace_path = "/nonexistent/trace.csv";
  std::ostringstream out3, err3;
  CHECK(run(config, out3, err3) == 3);
}

TEST_CASE("plot output is tidy t,series,value data") {
  fs::path spec = write_temp("stlmon_spec4.stl", "alw_[0,2] (x > 0)\n");
  fs::path trace = write_temp("stlmon_trace4.csv", "time,x\n0,1\n1,2\n2,-1\n");
  fs::path plot = fs::temp_directory_path() / "stlmon_plot.csv";

  RunConfig config;
  config.spec_path = spec.string();
  config.trace_path = trace.string();
  config.monitor = MonitorKind::All;
  config.plot_out = plot.string();
  std::ostringstream out, err;
  REQUIRE(run(config, out, err) == 0);

  std::ifstream in(plot);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,series,value");
  std::map<std::string, int> series_count;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    series_count[line.substr(first + 1, second - first - 1)]++;
  }
  CHECK(series_count["upper"] == 3);
  CHECK(series_count["lower"] == 3);
  CHECK(series_count["vio_distance"] == 3);
  CHECK(series_count["sat_distance"] == 3);
}

TEST_CASE("bench registry knows the four specifications") {
  CHECK(bench_spec("AFC1").variables == std::vector<std::string>{"AF", "AFref"});
  CHECK(bench_spec("AT1").variables == std::vector<std::string>{"speed", "RPM"});
  CHECK_THROWS_AS(bench_spec("AT9"), std::invalid_argument);
}

TEST_CASE("bench runs the excursion trace with clean cross-checks") {
  Trace t = synth_trace("AT1", 46, 1.0);
  BenchReport report = bench("AT1", t);
  CHECK(report.cross_check_failures == 0);
  CHECK(report.violation_episodes == 2);
  CHECK(report.samples == 46);
  REQUIRE(report.timings.size() == 4);

  Trace afc = synth_trace("AFC1", 70, 0.5);
  BenchReport r2 = bench("AFC1", afc);
  CHECK(r2.cross_check_failures == 0);
  CHECK(r2.violation_episodes >= 1);
}

TEST_CASE("bench rejects traces lacking the required variables") {
  Trace t = synth_trace("FIG1", 10, 1.0);
  CHECK_THROWS_AS(bench("AT1", t), TraceFormatError);
}

TEST_CASE("always-compliant deviation trace stays inconclusive") {
  Trace t = synth_trace("AFC_OK", 40, 1.0);  // shorter than the 50-unit horizon
  FormulaPtr f = parse_formula(bench_spec("AFC1").formula_text, t.variables());
  auto compiled = std::make_shared<const CompiledFormula>(
      *f, t.step(), DomainBounds{}, t.variables());
  ClassicMonitor m(compiled);
  for (std::size_t b = 0; b < t.size(); ++b) {
    m.step(t.prefix(b));
    CHECK(m.verdict() == Verdict::Unknown);
  }
}

TEST_CASE("domain bounds file feeds the monitors") {
  fs::path spec = write_temp("stlmon_spec6.stl", "alw_[0,5] (x < 10)\n");
  fs::path trace = write_temp("stlmon_trace6.csv", "time,x\n0,2\n1,3\n");
  fs::path bounds = write_temp("stlmon_bounds.json", "{\"x\": [0, 20]}\n");

  RunConfig config;
  config.spec_path = spec.string();
  config.trace_path = trace.string();
  config.bounds_path = bounds.string();
  std::ostringstream out, err;
  REQUIRE(run(config, out, err) == 0);
  auto rows = parse_json_lines(out.str());
  REQUIRE(rows.size() == 2);
  // with x in [0,20] the unresolved window keeps finite a-priori bounds
  CHECK(rows[0]["lower"] == "-10");
  CHECK(rows[0]["upper"] == "8");

  fs::path bad = write_temp("stlmon_bounds_bad.json", "[1,2]\n");
  config.bounds_path = bad.string();
  std::ostringstream out2, err2;
  CHECK(run(config, out2, err2) == 3);
}

TEST_CASE("stream input delivers records per sample") {
  fs::path spec = write_temp("stlmon_spec5.stl", "x > 0\n");
  RunConfig config;
  config.spec_path = spec.string();
  config.trace_path = "-";
  // stdin is not wired in unit tests; single-row file with explicit delta
  fs::path trace = write_temp("stlmon_trace5.csv", "time,x\n0,4\n");
  config.trace_path = trace.string();
  config.delta_override = 1.0;
  std::ostringstream out, err;
  REQUIRE(run(config, out, err) == 0);
  auto rows = parse_json_lines(out.str());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["upper"] == "4");
  CHECK(rows[0]["verdict"] == "true");
}
