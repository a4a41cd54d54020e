// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stlmon/classic_monitor.hpp"
#include "stlmon/errors.hpp"
#include "stlmon/generator.hpp"
#include "stlmon/harness.hpp"
#include "stlmon/oracle.hpp"
#include "stlmon/parser.hpp"

using namespace stlmon;

namespace {

const std::vector<std::string> kX = {"x"};

Trace make_x(std::initializer_list<double> values) {
  Trace t(1.0, {"x"});
  for (double v : values) {
    const double row[] = {v};
    t.append(row);
  }
  return t;
}

std::shared_ptr<const CompiledFormula> compile(const Formula& f, const Trace& t,
                                               const DomainBounds& b = {}) {
  return std::make_shared<const CompiledFormula>(f, t.step(), b, t.variables());
}

}  // namespace

TEST_CASE("interval narrows as the window resolves") {
  Trace t = make_x({1, 2, -1});
  FormulaPtr f = parse_formula("alw_[0,2] (x > 0)", kX);
  ClassicMonitor m(compile(*f, t));

  RobustnessInterval iv = m.step(t.prefix(0));
  CHECK(iv.lower == -kInf);
  CHECK(iv.upper == 1.0);

  iv = m.step(t.prefix(1));
  CHECK(iv.lower == -kInf);
  CHECK(iv.upper == 1.0);

  iv = m.step(t.prefix(2));
  CHECK(iv == RobustnessInterval{-1.0, -1.0});
  CHECK(m.verdict() == Verdict::False);
}

TEST_CASE("verdict sign rules") {
  CHECK(derive_verdict({-1.0, -1.0}) == Verdict::False);
  CHECK(derive_verdict({-kInf, 1.0}) == Verdict::Unknown);
  CHECK(derive_verdict({0.2, 5.0}) == Verdict::True);
  // an endpoint exactly at zero stays unknown
  CHECK(derive_verdict({0.0, 1.0}) == Verdict::Unknown);
  CHECK(derive_verdict({-1.0, 0.0}) == Verdict::Unknown);
}

TEST_CASE("speed-limit narrative: first violation, worst severity, freeze") {
  Trace t = synth_trace("FIG1", 120, 1.0);
  FormulaPtr f = parse_formula("alw_[0,100] (v < 10)", t.variables());
  ClassicMonitor m(compile(*f, t));
  std::vector<RobustnessInterval> stream;
  for (std::size_t b = 0; b < t.size(); ++b) stream.push_back(m.step(t.prefix(b)));

  for (std::size_t b = 0; b < 20; ++b) CHECK(stream[b].upper > 0.0);
  CHECK(stream[20].upper < 0.0);
  CHECK(stream[30].upper == -5.0);
  for (std::size_t b = 30; b < stream.size(); ++b) CHECK(stream[b].upper == -5.0);
}

TEST_CASE("monitor rejects non-contiguous views") {
  Trace t = make_x({1, 2, 3});
  FormulaPtr f = parse_formula("x > 0", kX);
  ClassicMonitor m(compile(*f, t));
  m.step(t.prefix(0));
  CHECK_THROWS_AS(m.step(t.prefix(2)), NonContiguousStepError);
}

TEST_CASE("offline check on the running example and on false") {
  Trace t = make_x({1, 2, -1, 0, 3, -2});
  FormulaPtr f = parse_formula("alw_[0,2] (x > 0)", kX);
  clam_offline_check(t, *f);
  clam_offline_check(t, *Formula::false_const());
}

TEST_CASE("offline agreement and monotonicity over the corpus") {
  auto corpus = gen_suite(2024, 120);
  for (const auto& c : corpus) {
    Trace t = c.make_trace();
    CAPTURE(c.spec_text);
    clam_offline_check(t, *c.formula, c.bounds);

    ClassicMonitor m(compile(*c.formula, t, c.bounds));
    RobustnessInterval prev{-kInf, kInf};
    Verdict prev_verdict = Verdict::Unknown;
    for (std::size_t b = 0; b < t.size(); ++b) {
      const RobustnessInterval iv = m.step(t.prefix(b));
      CHECK(iv.upper <= prev.upper);
      CHECK(iv.lower >= prev.lower);
      const Verdict v = derive_verdict(iv);
      if (prev_verdict != Verdict::Unknown) CHECK(v == prev_verdict);
      prev = iv;
      prev_verdict = v;
    }
  }
}

TEST_CASE("interval contains the robustness of random completions") {
  auto corpus = gen_suite(5150, 25);
  std::mt19937_64 rng(42);
  for (const auto& c : corpus) {
    Trace full = c.make_trace();
    const auto horizon = horizon_samples(*c.formula, c.delta);
    if (static_cast<std::int64_t>(full.size()) <= horizon) continue;
    // monitor a strict prefix, then complete it at random many times
    const std::size_t cut = static_cast<std::size_t>(horizon) / 2;
    ClassicMonitor m(compile(*c.formula, full, c.bounds));
    RobustnessInterval iv;
    for (std::size_t b = 0; b <= cut; ++b) iv = m.step(full.prefix(b));

    for (int rep = 0; rep < 100; ++rep) {
      Trace completed(c.delta, c.variables);
      for (std::size_t k = 0; k <= cut; ++k) {
        completed.append(c.samples[k]);
      }
      std::vector<double> row(c.variables.size());
      for (std::int64_t k = static_cast<std::int64_t>(cut) + 1; k <= horizon; ++k) {
        for (auto& v : row) v = uniform_double(rng, -12.0, 12.0);
        completed.append(row);
      }
      const double r = robustness(completed, *c.formula, 0);
      CAPTURE(c.spec_text);
      CHECK(r >= iv.lower);
      CHECK(r <= iv.upper);
    }
  }
}

TEST_CASE("sliding kernel matches the naive window scan") {
  auto corpus = gen_suite(777, 60);
  for (const auto& c : corpus) {
    Trace t = c.make_trace();
    auto compiled = compile(*c.formula, t, c.bounds);
    ClassicMonitor naive(compiled);
    ClassicMonitor fast(compiled, 0, ClassicMonitor::Options{true});
    for (std::size_t b = 0; b < t.size(); ++b) {
      const RobustnessInterval a = naive.step(t.prefix(b));
      const RobustnessInterval d = fast.step(t.prefix(b));
      CAPTURE(c.spec_text);
      CHECK(a == d);
    }
  }
}

TEST_CASE("eviction at the horizon leaves outputs unchanged") {
  auto corpus = gen_suite(31337, 40);
  for (const auto& c : corpus) {
    Trace unbounded = c.make_trace();
    // streaming twin: append and step in lockstep under a bounded window
    Trace bounded(c.delta, c.variables);
    bounded.set_retention(static_cast<std::size_t>(
                              horizon_samples(*c.formula, c.delta)) +
                          1);
    auto compiled = compile(*c.formula, unbounded, c.bounds);
    ClassicMonitor a(compiled);
    ClassicMonitor b(compiled);
    for (std::size_t k = 0; k < unbounded.size(); ++k) {
      bounded.append(c.samples[k]);
      CHECK(a.step(unbounded.prefix(k)) == b.step(bounded.prefix(k)));
    }
  }
}

TEST_CASE("false resolves immediately") {
  Trace t = make_x({5});
  ClassicMonitor m(compile(*Formula::false_const(), t));
  const RobustnessInterval iv = m.step(t.prefix(0));
  CHECK(iv == RobustnessInterval{-kInf, -kInf});
  CHECK(m.verdict() == Verdict::False);
}
