// SPDX-License-Identifier: Apache-2.0
#include "stlmon/trace.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>

namespace stlmon {

std::optional<std::pair<double, double>> DomainBounds::lookup(
    const std::string& var) const {
  auto it = by_name.find(var);
  if (it == by_name.end()) return std::nullopt;
  return it->second;
}

Trace::Trace(double step, std::vector<std::string> variables, double t0)
    : step_(step), t0_(t0), variables_(std::move(variables)) {
  if (!(step_ > 0.0) || !std::isfinite(step_)) {
    throw TraceFormatError("sampling step must be positive and finite");
  }
  if (variables_.empty()) {
    throw TraceFormatError("trace needs at least one variable");
  }
}

std::size_t Trace::append(std::span<const double> values) {
  if (values.size() != variables_.size()) {
    throw TraceFormatError("sample arity " + std::to_string(values.size()) +
                           " does not match " + std::to_string(variables_.size()) +
                           " declared variables");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw TraceFormatError("non-finite sample value");
    }
  }
  data_.insert(data_.end(), values.begin(), values.end());
  const std::size_t index = next_index_++;
  evict_front();
  return index;
}

double Trace::value(std::size_t var_index, std::size_t k) const {
  if (k >= next_index_) {
    throw BeyondPrefixError("sample " + std::to_string(k) + " beyond prefix end " +
                            std::to_string(next_index_ == 0 ? 0 : next_index_ - 1));
  }
  if (k < first_retained_) {
    throw EvictedError("sample " + std::to_string(k) + " evicted (history starts at " +
                       std::to_string(first_retained_) + ")");
  }
  const std::size_t row = k - first_retained_;
  return data_[row * variables_.size() + var_index];
}

void Trace::set_retention(std::optional<std::size_t> samples) {
  if (samples && *samples == 0) {
    throw TraceFormatError("retention window must keep at least one sample");
  }
  retention_ = samples;
  evict_front();
}

void Trace::evict_front() {
  if (!retention_) return;
  if (next_index_ - first_retained_ <= *retention_) return;
  const std::size_t drop = next_index_ - first_retained_ - *retention_;
  data_.erase(data_.begin(),
              data_.begin() + static_cast<std::ptrdiff_t>(drop * variables_.size()));
  first_retained_ += drop;
}

PrefixView Trace::prefix(std::size_t b) const {
  if (b >= next_index_) {
    throw BeyondPrefixError("prefix end " + std::to_string(b) +
                            " beyond stored samples");
  }
  return PrefixView(this, b);
}

PrefixView Trace::latest() const {
  if (next_index_ == 0) {
    throw BeyondPrefixError("empty trace has no prefix");
  }
  return PrefixView(this, next_index_ - 1);
}

double PrefixView::value_at(std::size_t var_index, std::size_t k) const {
  if (k > b_) {
    throw BeyondPrefixError("sample " + std::to_string(k) +
                            " beyond prefix end " + std::to_string(b_));
  }
  return trace_->value(var_index, k);
}

double PrefixView::value_at(const std::string& var, std::size_t k) const {
  const auto& names = trace_->variables();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == var) return value_at(i, k);
  }
  throw TraceFormatError("unknown variable '" + var + "'");
}

std::pair<double, double> atom_bounds(const Atom& atom, const DomainBounds& bounds,
                                      const std::vector<std::string>& variables) {
  std::vector<VarRange> ranges(variables.size());
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (auto r = bounds.lookup(variables[i])) {
      if (!(r->first <= r->second)) {
        throw TraceFormatError("domain bounds for '" + variables[i] +
                               "' are reversed");
      }
      ranges[i] = {r->first, r->second};
    }
  }
  VarRange r = eval_expr_range(*atom.expr, ranges);
  return {r.lo, r.hi};
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& field, std::size_t row) {
  const std::string t = trim(field);
  if (t.empty()) {
    throw TraceFormatError("empty field in row " + std::to_string(row));
  }
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    throw TraceFormatError("malformed number '" + t + "' in row " +
                           std::to_string(row));
  }
  return v;
}

}  // namespace

CsvTraceReader::CsvTraceReader(std::istream& in,
                               std::optional<double> delta_override)
    : in_(in), delta_(delta_override), delta_forced_(delta_override.has_value()) {
  std::string header;
  if (!std::getline(in_, header)) {
    throw TraceFormatError("empty trace: missing CSV header");
  }
  std::vector<std::string> fields = split_csv_line(header);
  if (fields.empty() || trim(fields[0]) != "time") {
    throw TraceFormatError("CSV header must start with 'time'");
  }
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const std::string name = trim(fields[i]);
    if (name.empty()) {
      throw TraceFormatError("empty variable name in CSV header");
    }
    variables_.push_back(name);
  }
  if (variables_.empty()) {
    throw TraceFormatError("CSV header declares no variables");
  }
  if (delta_forced_ && !(*delta_ > 0.0)) {
    throw TraceFormatError("sampling step override must be positive");
  }
}

bool CsvTraceReader::next(double& time_out, std::vector<double>& values_out) {
  std::string line;
  do {
    if (!std::getline(in_, line)) return false;
  } while (trim(line).empty());

  std::vector<std::string> fields = split_csv_line(line);
  if (fields.size() != variables_.size() + 1) {
    throw TraceFormatError("row " + std::to_string(rows_ + 1) + " has " +
                           std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(variables_.size() + 1));
  }
  const double time = parse_number(fields[0], rows_ + 1);
  values_out.clear();
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const double v = parse_number(fields[i], rows_ + 1);
    if (!std::isfinite(v)) {
      throw TraceFormatError("non-finite value in row " + std::to_string(rows_ + 1));
    }
    values_out.push_back(v);
  }

  if (rows_ == 0) {
    t0_ = time;
  } else if (rows_ == 1 && !delta_forced_) {
    const double d = time - t0_;
    if (!(d > 0.0)) {
      throw TraceFormatError("times must be strictly increasing");
    }
    delta_ = d;
  }
  if (delta_) {
    const double expected = t0_ + static_cast<double>(rows_) * *delta_;
    if (std::fabs(time - expected) > 1e-9 * *delta_) {
      throw TraceFormatError("row " + std::to_string(rows_ + 1) + " time " +
                             std::to_string(time) + " is off the uniform grid (expected " +
                             std::to_string(expected) + ")");
    }
  }
  time_out = time;
  ++rows_;
  return true;
}

Trace read_trace_csv(std::istream& in, std::optional<double> delta_override) {
  CsvTraceReader reader(in, delta_override);
  std::vector<std::vector<double>> rows;
  double time = 0.0;
  double t0 = 0.0;
  std::vector<double> values;
  while (reader.next(time, values)) {
    if (rows.empty()) t0 = time;
    rows.push_back(values);
  }
  if (rows.empty()) {
    throw TraceFormatError("empty trace: no data rows");
  }
  double delta;
  if (reader.delta()) {
    delta = *reader.delta();
  } else {
    throw TraceFormatError(
        "cannot infer sampling step from a single row; pass an explicit step");
  }
  Trace trace(delta, reader.variables(), t0);
  for (const auto& row : rows) {
    trace.append(row);
  }
  return trace;
}

}  // namespace stlmon
