// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stlmon/causation.hpp"

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

// Running example: speed must stay low or deceleration must follow within 5
// time units. The trace pins down the worked-example values: v crosses
// 10 on [20,25] peaking at 13, a stays in [3,5] through t=30 (min 3, a(30)=5),
// then goes negative down to -5 at t=35.
Trace running_example_trace(std::size_t samples = 40) {
  Trace t(1.0, {"v", "a"});
  for (std::size_t k = 0; k < samples; ++k) {
    const auto tt = static_cast<double>(k);
    double v = 2.0;
    if (tt >= 20.0 && tt <= 24.0) v = 12.0;
    if (tt == 25.0) v = 13.0;
    if (tt >= 26.0 && tt <= 35.0) v = 8.0;
    double a = 4.0;
    if (tt >= 25.0 && tt <= 29.0) a = 3.0;
    if (tt == 30.0) a = 5.0;
    if (tt >= 31.0 && tt <= 34.0) a = -2.0;
    if (tt >= 35.0) a = -5.0;
    const double row[] = {v, a};
    t.append(row);
  }
  return t;
}

FormulaPtr running_example_formula() {
  return parse_formula("alw_[0,100] (v > 10 -> ev_[0,5] (a < 0))", {"v", "a"});
}

Epoch expected_running_epoch() {
  Epoch e;
  for (std::int64_t t = 20; t <= 25; ++t) e.pairs.insert({0, t});  // v > 10
  for (std::int64_t t = 20; t <= 30; ++t) e.pairs.insert({1, t});  // a < 0 fails
  return e;
}

}  // namespace

TEST_CASE("violation epoch of a resolved always window") {
  Trace t = make_x({1, 2, -1});
  FormulaPtr f = parse_formula("alw_[0,2] (x > 0)", kX);
  Epoch e = violation_epoch(t.prefix(2), *f, 0);
  REQUIRE(e.pairs.size() == 1);
  CHECK(e.pairs.count({0, 2}) == 1);
  // not violated yet at b=1: empty
  CHECK(violation_epoch(t.prefix(1), *f, 0).empty());
}

TEST_CASE("satisfaction epoch of an eventually") {
  Trace t = make_x({-1, 3});
  FormulaPtr f = parse_formula("ev_[0,2] (x > 0)", kX);
  Epoch e = satisfaction_epoch(t.prefix(1), *f, 0);
  REQUIRE(e.pairs.size() == 1);
  CHECK(e.pairs.count({0, 1}) == 1);
}

TEST_CASE("inconclusive bounds give empty epochs") {
  Trace t = make_x({1, 2});
  FormulaPtr f = parse_formula("alw_[0,3] (x > 0)", kX);
  CHECK(satisfaction_epoch(t.prefix(1), *f, 0).empty());
  CHECK(violation_epoch(t.prefix(1), *f, 0).empty());
}

TEST_CASE("negation swaps polarities at a single sample") {
  Trace t = make_x({-2});
  FormulaPtr f = parse_formula("not (x > 0)", kX);
  Epoch e = satisfaction_epoch(t.prefix(0), *f, 0);
  REQUIRE(e.pairs.size() == 1);
  CHECK(e.pairs.count({0, 0}) == 1);
}

TEST_CASE("running example epochs at b=30 and b=35 coincide") {
  Trace t = running_example_trace();
  FormulaPtr f = running_example_formula();
  const Epoch expected = expected_running_epoch();

  Epoch at30 = violation_epoch(t.prefix(30), *f, 0);
  CHECK(at30 == expected);
  Epoch at35 = violation_epoch(t.prefix(35), *f, 0);
  CHECK(at35 == expected);
}

TEST_CASE("Boolean causation marks the violation episode and its end") {
  Trace t = running_example_trace();
  FormulaPtr f = running_example_formula();
  BooleanCausationMonitor m(compile(*f, t));
  std::vector<CausationVerdict> stream;
  for (std::size_t b = 0; b < t.size(); ++b) stream.push_back(m.step(t.prefix(b)));

  for (std::size_t b = 0; b < 25; ++b) {
    CHECK(stream[b] == CausationVerdict::Irrelevant);
  }
  for (std::size_t b = 25; b <= 30; ++b) {
    CAPTURE(b);
    CHECK(stream[b] == CausationVerdict::Violation);
  }
  for (std::size_t b = 31; b < t.size(); ++b) {
    CAPTURE(b);
    CHECK(stream[b] == CausationVerdict::Irrelevant);
  }
}

TEST_CASE("Boolean causation on the window example") {
  Trace t = make_x({1, 2, -1});
  FormulaPtr f = parse_formula("alw_[0,2] (x > 0)", kX);
  BooleanCausationMonitor m(compile(*f, t));
  CHECK(m.step(t.prefix(0)) == CausationVerdict::Irrelevant);
  CHECK(m.step(t.prefix(1)) == CausationVerdict::Irrelevant);
  CHECK(m.step(t.prefix(2)) == CausationVerdict::Violation);
}

TEST_CASE("quantitative causation distances on the running example") {
  Trace t = running_example_trace();
  FormulaPtr f = running_example_formula();
  QuantitativeCausationMonitor m(compile(*f, t));
  std::vector<CausationOutput> outputs;
  for (std::size_t b = 0; b < t.size(); ++b) outputs.push_back(m.step(t.prefix(b)));

  CHECK(outputs[30].vio_distance == -3.0);  // max(-3, -3, -5)
  CHECK(outputs[35].vio_distance == 5.0);
  // the Boolean monitor reports a violation cause exactly while negative
  CHECK(outputs[30].derived_verdict == CausationVerdict::Violation);
  CHECK(outputs[35].derived_verdict == CausationVerdict::Irrelevant);
}

TEST_CASE("per-step distances of the window example") {
  Trace t = make_x({1, 2, -1});
  FormulaPtr f = parse_formula("alw_[0,2] (x > 0)", kX);
  QuantitativeCausationMonitor m(compile(*f, t));
  CHECK(m.step(t.prefix(0)).vio_distance == 1.0);
  CHECK(m.step(t.prefix(1)).vio_distance == 2.0);
  CHECK(m.step(t.prefix(2)).vio_distance == -1.0);
}

TEST_CASE("atom distances fall back to the a-priori bounds off the step") {
  Trace t = make_x({7, -3});
  FormulaPtr f = parse_formula("x > 3", kX);
  DomainBounds bounds;
  bounds.by_name["x"] = {0.0, 10.0};
  QuantitativeCausationMonitor m(compile(*f, t, bounds));
  const CausationOutput first = m.step(t.prefix(0));
  CHECK(first.vio_distance == 4.0);  // the sample itself
  const CausationOutput second = m.step(t.prefix(1));
  CHECK(second.vio_distance == 7.0);   // r_max of x - 3 over [0,10]
  CHECK(second.sat_distance == -3.0);  // r_min
}

TEST_CASE("reconstruction equals the classic monitor streamwise") {
  Trace t = make_x({1, 2, -1});
  FormulaPtr f = parse_formula("alw_[0,2] (x > 0)", kX);
  auto compiled = compile(*f, t);
  QuantitativeCausationMonitor q(compiled);
  ClassicMonitor c(compiled);
  std::vector<CausationOutput> outputs;
  std::vector<RobustnessInterval> classic;
  for (std::size_t b = 0; b < t.size(); ++b) {
    outputs.push_back(q.step(t.prefix(b)));
    classic.push_back(c.step(t.prefix(b)));
  }
  CHECK(reconstruct_clam(outputs) == classic);
  CHECK(outputs[0].running_upper == 1.0);
  CHECK(outputs[1].running_upper == 1.0);
  CHECK(outputs[2].running_upper == -1.0);
}

TEST_CASE("single atom reconstruction") {
  Trace t = make_x({4});
  FormulaPtr f = parse_formula("x > 0", kX);
  QuantitativeCausationMonitor m(compile(*f, t));
  const CausationOutput o = m.step(t.prefix(0));
  CHECK(o.running_lower == 4.0);
  CHECK(o.running_upper == 4.0);
}

TEST_CASE("derived Boolean causation sign rules") {
  CHECK(derive_bcaum(-3.0, -7.0) == CausationVerdict::Violation);
  CHECK(derive_bcaum(5.0, -2.0) == CausationVerdict::Irrelevant);
  CHECK(derive_bcaum(kInf, -kInf) == CausationVerdict::Irrelevant);
  bool boundary = false;
  CHECK(derive_bcaum(0.0, -1.0, &boundary) == CausationVerdict::Irrelevant);
  CHECK(boundary);
  boundary = false;
  CHECK(derive_bcaum(2.0, 0.0, &boundary) == CausationVerdict::Irrelevant);
  CHECK(boundary);
}

TEST_CASE("violation distance recovers between episodes") {
  Trace t = synth_trace("AT1", 46, 1.0);
  FormulaPtr f = parse_formula(bench_spec("AT1").formula_text, t.variables());
  QuantitativeCausationMonitor m(compile(*f, t));
  bool saw_negative = false;
  bool recovered = false;
  bool dipped_again = false;
  for (std::size_t b = 0; b < t.size(); ++b) {
    const CausationOutput o = m.step(t.prefix(b));
    if (!saw_negative) {
      saw_negative = o.vio_distance < 0.0;
    } else if (!recovered) {
      recovered = o.vio_distance > 0.0;
    } else if (!dipped_again) {
      dipped_again = o.vio_distance < 0.0;
    }
  }
  CHECK(saw_negative);
  CHECK(recovered);
  CHECK(dipped_again);
}

TEST_CASE("refinement cross-checks hold on the corpus") {
  auto corpus = gen_suite(424242, 120);
  for (const auto& c : corpus) {
    Trace t = c.make_trace();
    CAPTURE(c.spec_text);
    const CrossCheckStats stats = run_cross_checked(t, *c.formula, c.bounds);
    CHECK(stats.monotonicity_violations == 0);
    CHECK(stats.boolean_refinement_mismatch == 0);
    CHECK(stats.sign_refinement_mismatch == 0);
    CHECK(stats.reconstruction_mismatch == 0);
    CHECK(stats.epoch_sign_violations == 0);
    CHECK(stats.first_cause_misses == 0);
    CHECK(stats.verdict_regressions == 0);
    CHECK(stats.collapse_ok);
  }
}

TEST_CASE("causation distances are unaffected by the window kernel") {
  auto corpus = gen_suite(909, 40);
  for (const auto& c : corpus) {
    Trace t = c.make_trace();
    auto compiled = compile(*c.formula, t, c.bounds);
    QuantitativeCausationMonitor naive(compiled);
    QuantitativeCausationMonitor fast(
        compiled, 0, QuantitativeCausationMonitor::Options{true});
    for (std::size_t b = 0; b < t.size(); ++b) {
      const CausationOutput a = naive.step(t.prefix(b));
      const CausationOutput d = fast.step(t.prefix(b));
      CHECK(a.vio_distance == d.vio_distance);
      CHECK(a.sat_distance == d.sat_distance);
      CHECK(a.running_upper == d.running_upper);
      CHECK(a.running_lower == d.running_lower);
    }
  }
}

TEST_CASE("membership and emptiness predicates agree with the full sets") {
  auto corpus = gen_suite(606, 40);
  for (const auto& c : corpus) {
    Trace t = c.make_trace();
    BooleanCausationMonitor m(compile(*c.formula, t, c.bounds));
    for (std::size_t b = 0; b < t.size(); ++b) {
      const CausationVerdict v = m.step(t.prefix(b));
      if (static_cast<std::int64_t>(b) >
          m.classic().table().compiled().horizon_samples()) {
        break;  // steady phase reuses frozen answers
      }
      const Epoch vio = m.violation_epoch();
      const Epoch sat = m.satisfaction_epoch();
      CAPTURE(c.spec_text);
      CAPTURE(b);
      CHECK(m.violation_epoch_nonempty() == !vio.empty());
      CHECK(m.satisfaction_epoch_nonempty() == !sat.empty());
      const auto instant = static_cast<std::int64_t>(b);
      CHECK((v == CausationVerdict::Violation) == vio.contains_instant(instant));
      CHECK((v == CausationVerdict::Satisfaction) ==
            sat.contains_instant(instant));
    }
  }
}

TEST_CASE("causation monitors reject non-contiguous views") {
  Trace t = make_x({1, 2, 3});
  FormulaPtr f = parse_formula("ev_[0,1] (x > 0)", kX);
  QuantitativeCausationMonitor m(compile(*f, t));
  m.step(t.prefix(0));
  CHECK_THROWS_AS(m.step(t.prefix(2)), NonContiguousStepError);
}

TEST_CASE("epochs never reference the future") {
  auto corpus = gen_suite(88, 30);
  for (const auto& c : corpus) {
    Trace t = c.make_trace();
    FormulaPtr f = c.formula;
    for (std::size_t b = 0; b < t.size(); b += 7) {
      const Epoch vio = violation_epoch(t.prefix(b), *f, 0, c.bounds);
      const Epoch sat = satisfaction_epoch(t.prefix(b), *f, 0, c.bounds);
      for (const auto& [atom, instant] : vio.pairs) {
        CHECK(instant <= static_cast<std::int64_t>(b));
      }
      for (const auto& [atom, instant] : sat.pairs) {
        CHECK(instant <= static_cast<std::int64_t>(b));
      }
    }
  }
}
