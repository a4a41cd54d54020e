// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "stlmon/errors.hpp"
#include "stlmon/parser.hpp"
#include "stlmon/trace.hpp"

using namespace stlmon;

namespace {

Trace make_x(std::initializer_list<double> values, double delta = 1.0) {
  Trace t(delta, {"x"});
  for (double v : values) {
    const double row[] = {v};
    t.append(row);
  }
  return t;
}

}  // namespace

TEST_CASE("append returns dense indices at grid times") {
  Trace t(0.5, {"x", "y"}, 2.0);
  const double r0[] = {1.0, 2.0};
  const double r1[] = {3.0, 4.0};
  CHECK(t.append(r0) == 0);
  CHECK(t.append(r1) == 1);
  CHECK(t.time_at(0) == 2.0);
  CHECK(t.time_at(1) == 2.5);
  CHECK(t.value(1, 1) == 4.0);
}

TEST_CASE("append validates arity and finiteness") {
  Trace t(1.0, {"x", "y"});
  const double bad_arity[] = {1.0};
  CHECK_THROWS_AS(t.append(bad_arity), TraceFormatError);
  const double bad_value[] = {1.0, kInf};
  CHECK_THROWS_AS(t.append(bad_value), TraceFormatError);
}

TEST_CASE("prefix views answer stored samples and reject the future") {
  Trace t = make_x({1, 2, -1});
  PrefixView view = t.prefix(2);
  CHECK(view.value_at("x", 1) == 2.0);
  CHECK_THROWS_AS(view.value_at("x", 3), BeyondPrefixError);
  PrefixView shorter = t.prefix(1);
  CHECK_THROWS_AS(shorter.value_at("x", 2), BeyondPrefixError);
}

TEST_CASE("eviction keeps indices stable and rejects old reads") {
  // horizon of two samples: retain horizon + 1
  Trace t(1.0, {"x"});
  t.set_retention(3);
  for (double v : {1.0, 2.0, 3.0, 4.0, 5.0}) {
    const double row[] = {v};
    t.append(row);
  }
  CHECK(t.size() == 5);
  CHECK(t.first_retained() == 2);
  PrefixView view = t.latest();
  CHECK(view.value_at("x", 4) == 5.0);
  CHECK(view.value_at("x", 2) == 3.0);
  CHECK_THROWS_AS(view.value_at("x", 0), EvictedError);
}

TEST_CASE("appends never disturb stored prefixes") {
  Trace t = make_x({1, 2});
  PrefixView early = t.prefix(1);
  const double row[] = {-7.0};
  t.append(row);
  CHECK(early.value_at("x", 0) == 1.0);
  CHECK(early.value_at("x", 1) == 2.0);
}

TEST_CASE("atom bounds from domain boxes") {
  const std::vector<std::string> vars = {"v"};
  FormulaPtr f = parse_formula("v < 10", vars);
  const Atom& atom = f->atom;

  DomainBounds bounds;
  bounds.by_name["v"] = {0.0, 20.0};
  auto [lo, hi] = atom_bounds(atom, bounds, vars);
  CHECK(lo == -10.0);
  CHECK(hi == 10.0);

  auto [ulo, uhi] = atom_bounds(atom, DomainBounds{}, vars);
  CHECK(ulo == -kInf);
  CHECK(uhi == kInf);
}

TEST_CASE("abs-leg atom bounds") {
  const std::vector<std::string> vars = {"AF", "AFref"};
  FormulaPtr f = parse_formula("abs(AF - AFref) < 0.1", vars);
  DomainBounds bounds;
  bounds.by_name["AF"] = {0.0, 2.0};
  bounds.by_name["AFref"] = {0.0, 2.0};
  auto [lo, hi] = atom_bounds(f->left->atom, bounds, vars);
  CHECK(lo == doctest::Approx(-1.9));
  CHECK(hi == doctest::Approx(2.1));
}

TEST_CASE("csv reader enforces shape and uniform sampling") {
  std::istringstream good("time,x,y\n0,1,2\n0.5,3,4\n1.0,5,6\n");
  Trace t = read_trace_csv(good);
  CHECK(t.step() == doctest::Approx(0.5));
  CHECK(t.size() == 3);
  CHECK(t.value(1, 2) == 6.0);

  std::istringstream empty("time,x\n");
  CHECK_THROWS_AS(read_trace_csv(empty), TraceFormatError);

  std::istringstream jagged("time,x\n0,1\n1,2,3\n");
  CHECK_THROWS_AS(read_trace_csv(jagged), TraceFormatError);

  std::istringstream skewed("time,x\n0,1\n1,2\n2.5,3\n");
  CHECK_THROWS_AS(read_trace_csv(skewed), TraceFormatError);

  std::istringstream decreasing("time,x\n0,1\n-1,2\n");
  CHECK_THROWS_AS(read_trace_csv(decreasing), TraceFormatError);

  std::istringstream one_row("time,x\n0,1\n");
  CHECK_THROWS_AS(read_trace_csv(one_row), TraceFormatError);
  std::istringstream one_row_again("time,x\n0,1\n");
  Trace single = read_trace_csv(one_row_again, 0.25);
  CHECK(single.step() == 0.25);
}
