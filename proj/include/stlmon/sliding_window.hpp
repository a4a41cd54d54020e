// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <span>
#include <vector>

namespace stlmon {

/// Sliding-window extremum over a contiguous range of indices, O(1) amortized
/// per output. Keeps a monotonic deque of candidate indices into `values`;
/// with Less = std::less the front is the window minimum.
template <typename Less = std::less<double>>
class SlidingExtremum {
 public:
  explicit SlidingExtremum(std::size_t window) : window_(window) {}

  void push(std::size_t index, double value) {
    while (!deque_.empty() && !less_(values_at(deque_.back()), value)) {
      deque_.pop_back();
    }
    values_.push_back(value);
    indices_.push_back(index);
    deque_.push_back(values_.size() - 1);
    // drop candidates that fell out of the window ending at `index`
    while (!deque_.empty() && indices_[deque_.front()] + window_ <= index) {
      deque_.pop_front();
    }
  }

  double extremum() const { return values_[deque_.front()]; }
  bool empty() const { return deque_.empty(); }

 private:
  double values_at(std::size_t pos) const { return values_[pos]; }

  std::size_t window_;
  Less less_;
  std::vector<double> values_;
  std::vector<std::size_t> indices_;
  std::deque<std::size_t> deque_;
};

/// Writes min (Less=std::less) of values[t+lo .. t+hi] into out[t - t_begin]
/// for t in [t_begin, t_end], one deque sweep over the input range.
/// `values` must cover [t_begin+lo, t_end+hi].
template <typename Less>
void sliding_extremum_range(std::span<const double> values, std::int64_t lo,
                            std::int64_t hi, std::int64_t t_begin,
                            std::int64_t t_end, double* out) {
  Less less;
  std::deque<std::int64_t> dq;  // positions into values, extremum at front
  std::int64_t next = t_begin + lo;
  for (std::int64_t t = t_begin; t <= t_end; ++t) {
    const std::int64_t w_lo = t + lo;
    const std::int64_t w_hi = t + hi;
    for (; next <= w_hi; ++next) {
      while (!dq.empty() && !less(values[dq.back()], values[next])) dq.pop_back();
      dq.push_back(next);
    }
    while (!dq.empty() && dq.front() < w_lo) dq.pop_front();
    out[t - t_begin] = values[dq.front()];
  }
}

}  // namespace stlmon
