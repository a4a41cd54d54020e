// SPDX-License-Identifier: Apache-2.0
#include "stlmon/classic_monitor.hpp"

#include <string>

#include "stlmon/errors.hpp"
#include "stlmon/oracle.hpp"

namespace stlmon {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

ClassicMonitor::ClassicMonitor(std::shared_ptr<const CompiledFormula> compiled,
                               std::int64_t origin)
    : ClassicMonitor(std::move(compiled), origin, Options()) {}

ClassicMonitor::ClassicMonitor(std::shared_ptr<const CompiledFormula> compiled,
                               std::int64_t origin, Options options)
    : compiled_(compiled),
      table_(std::move(compiled), IntervalTable::Options{options.sliding_kernel}),
      origin_(origin) {
  last_ = table_.at(table_.compiled().root(), 0);
}

RobustnessInterval ClassicMonitor::step(const PrefixView& view) {
  const auto expected =
      static_cast<std::size_t>(origin_ + local_b_ + 1);
  if (view.b_index() != expected) {
    throw NonContiguousStepError(
        "monitor expected prefix end " + std::to_string(expected) + ", got " +
        std::to_string(view.b_index()));
  }
  ++local_b_;
  table_.advance(view, local_b_, origin_);
  last_ = table_.at(compiled_->root(), 0);
  return last_;
}

void clam_offline_check(const Trace& trace, const Formula& f,
                        const DomainBounds& bounds) {
  const double offline = robustness(trace, f, 0);
  auto compiled = std::make_shared<const CompiledFormula>(f, trace.step(), bounds,
                                                          trace.variables());
  ClassicMonitor monitor(compiled);
  std::int64_t first_escape = -1;
  RobustnessInterval iv;
  for (std::size_t b = 0; b < trace.size(); ++b) {
    iv = monitor.step(trace.prefix(b));
    if (first_escape < 0 && (offline < iv.lower || offline > iv.upper)) {
      first_escape = static_cast<std::int64_t>(b);
    }
  }
  if (iv.lower != iv.upper || iv.lower != offline || first_escape >= 0) {
    std::string msg = "online/offline disagreement: offline=" +
                      std::to_string(offline) + " final=[" +
                      std::to_string(iv.lower) + "," + std::to_string(iv.upper) +
                      "]";
    if (first_escape >= 0) {
      msg += " first differing instant b=" + std::to_string(first_escape);
    }
    throw std::logic_error(msg);
  }
}

}  // namespace stlmon
