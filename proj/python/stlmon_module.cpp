// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stlmon/causation.hpp"
#include "stlmon/generator.hpp"
#include "stlmon/harness.hpp"
#include "stlmon/oracle.hpp"
#include "stlmon/parser.hpp"
#include "stlmon/reset_monitor.hpp"

namespace py = pybind11;
using namespace stlmon;

namespace {

// pybind11 holders cannot be shared_ptr-to-const; a tiny handle keeps the
// immutable tree shareable on the python side
struct PyFormula {
  FormulaPtr ptr;
};

DomainBounds bounds_from_dict(const py::dict& d) {
  DomainBounds bounds;
  for (auto item : d) {
    auto pair = item.second.cast<std::pair<double, double>>();
    bounds.by_name[item.first.cast<std::string>()] = pair;
  }
  return bounds;
}

std::shared_ptr<const CompiledFormula> compile_formula(const PyFormula& f,
                                                       const Trace& trace,
                                                       const py::dict& bounds) {
  return std::make_shared<const CompiledFormula>(
      *f.ptr, trace.step(), bounds_from_dict(bounds), trace.variables());
}

}  // namespace

PYBIND11_MODULE(_stlmon, m) {
  m.doc() = "Streaming STL monitoring: classic intervals, causation distances, "
            "epoch diagnostics, reset baseline";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<TraceFormatError>(m, "TraceFormatError");

  py::enum_<Verdict>(m, "Verdict")
      .value("TRUE", Verdict::True)
      .value("FALSE", Verdict::False)
      .value("UNKNOWN", Verdict::Unknown);

  py::enum_<CausationVerdict>(m, "CausationVerdict")
      .value("VIOLATION", CausationVerdict::Violation)
      .value("SATISFACTION", CausationVerdict::Satisfaction)
      .value("IRRELEVANT", CausationVerdict::Irrelevant);

  py::class_<PyFormula>(m, "Formula")
      .def("__str__", [](const PyFormula& f) { return print_formula(*f.ptr); })
      .def_property_readonly(
          "horizon", [](const PyFormula& f) { return horizon(*f.ptr); })
      .def("atoms", [](const PyFormula& f) {
        std::vector<std::pair<int, std::string>> out;
        for (const Atom& a : atoms(*f.ptr)) {
          out.emplace_back(a.id, print_expr(*a.expr));
        }
        return out;
      });

  m.def(
      "parse",
      [](const std::string& text, const std::vector<std::string>& variables) {
        return PyFormula{parse_formula(text, variables)};
      },
      py::arg("text"), py::arg("variables"),
      "Parse a specification against a declared variable list.");

  py::class_<Trace>(m, "Trace")
      .def(py::init<double, std::vector<std::string>, double>(), py::arg("step"),
           py::arg("variables"), py::arg("t0") = 0.0)
      .def("append",
           [](Trace& t, const std::vector<double>& row) { return t.append(row); })
      .def("__len__", &Trace::size)
      .def_property_readonly("step", &Trace::step)
      .def_property_readonly("variables", &Trace::variables)
      .def("value", &Trace::value, py::arg("var_index"), py::arg("k"))
      .def("set_retention", [](Trace& t, std::size_t samples) {
        t.set_retention(samples);
      });

  m.def(
      "robustness",
      [](const Trace& t, const PyFormula& f, std::size_t k) {
        return robustness(t, *f.ptr, k);
      },
      py::arg("trace"), py::arg("formula"), py::arg("k") = 0,
      "Offline robustness of a complete trace at anchor sample k.");

  m.def(
      "satisfies",
      [](const Trace& t, const PyFormula& f, std::size_t k) {
        return satisfies(t, *f.ptr, k);
      },
      py::arg("trace"), py::arg("formula"), py::arg("k") = 0);

  py::class_<RobustnessInterval>(m, "RobustnessInterval")
      .def_readonly("lower", &RobustnessInterval::lower)
      .def_readonly("upper", &RobustnessInterval::upper)
      .def("__repr__", [](const RobustnessInterval& iv) {
        return "[" + std::to_string(iv.lower) + ", " + std::to_string(iv.upper) +
               "]";
      });

  m.def("derive_verdict", &derive_verdict);

  py::class_<ClassicMonitor>(m, "ClassicMonitor")
      .def(py::init([](const PyFormula& f, const Trace& t, const py::dict& b) {
             return std::make_unique<ClassicMonitor>(compile_formula(f, t, b));
           }),
           py::arg("formula"), py::arg("trace"), py::arg("bounds") = py::dict())
      .def("step",
           [](ClassicMonitor& m, const Trace& t, std::size_t b) {
             return m.step(t.prefix(b));
           })
      .def_property_readonly("verdict", &ClassicMonitor::verdict);

  py::class_<CausationOutput>(m, "CausationOutput")
      .def_readonly("b", &CausationOutput::b)
      .def_readonly("vio_distance", &CausationOutput::vio_distance)
      .def_readonly("sat_distance", &CausationOutput::sat_distance)
      .def_readonly("derived_verdict", &CausationOutput::derived_verdict)
      .def_readonly("boundary", &CausationOutput::boundary)
      .def_readonly("running_upper", &CausationOutput::running_upper)
      .def_readonly("running_lower", &CausationOutput::running_lower);

  py::class_<QuantitativeCausationMonitor>(m, "QuantitativeCausationMonitor")
      .def(py::init([](const PyFormula& f, const Trace& t, const py::dict& b) {
             return std::make_unique<QuantitativeCausationMonitor>(
                 compile_formula(f, t, b));
           }),
           py::arg("formula"), py::arg("trace"), py::arg("bounds") = py::dict())
      .def("step", [](QuantitativeCausationMonitor& m, const Trace& t,
                      std::size_t b) { return m.step(t.prefix(b)); });

  py::class_<BooleanCausationMonitor>(m, "BooleanCausationMonitor")
      .def(py::init([](const PyFormula& f, const Trace& t, const py::dict& b) {
             return std::make_unique<BooleanCausationMonitor>(
                 compile_formula(f, t, b));
           }),
           py::arg("formula"), py::arg("trace"), py::arg("bounds") = py::dict())
      .def("step", [](BooleanCausationMonitor& m, const Trace& t, std::size_t b) {
        return m.step(t.prefix(b));
      });

  py::class_<ResetMonitor::StepResult>(m, "ResetStepResult")
      .def_readonly("interval", &ResetMonitor::StepResult::interval)
      .def_readonly("verdict", &ResetMonitor::StepResult::verdict)
      .def_readonly("episode", &ResetMonitor::StepResult::episode)
      .def_readonly("reset_here", &ResetMonitor::StepResult::reset_here);

  py::class_<ResetMonitor>(m, "ResetMonitor")
      .def(py::init([](const PyFormula& f, const Trace& t, const py::dict& b,
                       bool reset_on_satisfaction) {
             return std::make_unique<ResetMonitor>(
                 compile_formula(f, t, b),
                 ResetMonitor::Options{reset_on_satisfaction, false});
           }),
           py::arg("formula"), py::arg("trace"), py::arg("bounds") = py::dict(),
           py::arg("reset_on_satisfaction") = true)
      .def("step", [](ResetMonitor& m, const Trace& t,
                      std::size_t b) { return m.step(t.prefix(b)); })
      .def_property_readonly("violation_episodes",
                             &ResetMonitor::violation_episodes)
      .def_property_readonly("reset_instants", &ResetMonitor::reset_instants);

  m.def(
      "violation_epoch",
      [](const Trace& t, std::size_t b, const PyFormula& f, std::int64_t k,
         const py::dict& bounds) {
        Epoch e = violation_epoch(t.prefix(b), *f.ptr, k, bounds_from_dict(bounds));
        return std::vector<std::pair<int, std::int64_t>>(e.pairs.begin(),
                                                         e.pairs.end());
      },
      py::arg("trace"), py::arg("b"), py::arg("formula"), py::arg("k") = 0,
      py::arg("bounds") = py::dict());

  m.def(
      "satisfaction_epoch",
      [](const Trace& t, std::size_t b, const PyFormula& f, std::int64_t k,
         const py::dict& bounds) {
        Epoch e = satisfaction_epoch(t.prefix(b), *f.ptr, k, bounds_from_dict(bounds));
        return std::vector<std::pair<int, std::int64_t>>(e.pairs.begin(),
                                                         e.pairs.end());
      },
      py::arg("trace"), py::arg("b"), py::arg("formula"), py::arg("k") = 0,
      py::arg("bounds") = py::dict());

  m.def("derive_bcaum", [](double vio, double sat) {
    bool boundary = false;
    CausationVerdict v = derive_bcaum(vio, sat, &boundary);
    return py::make_tuple(v, boundary);
  });

  m.def("synth_trace", &synth_trace, py::arg("name"), py::arg("samples"),
        py::arg("delta"));
}
