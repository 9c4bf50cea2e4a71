// SPDX-License-Identifier: Apache-2.0
//
// Finite unions of closed intervals inside a bounded window.

#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rsineq/norms.hpp"

namespace rsineq {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

class IntervalSet {
 public:
  IntervalSet() = default;

  /// Clips `parts` to the window, sorts, and merges overlapping or touching pieces.
  /// Empty and degenerate pieces are dropped.
  explicit IntervalSet(Window window, std::vector<Interval> parts = {}) : window_(window) {
    if (!(window.lo <= window.hi)) throw std::invalid_argument("IntervalSet: window lo > hi");
    for (auto& p : parts) {
      p.lo = std::max(p.lo, window.lo);
      p.hi = std::min(p.hi, window.hi);
    }
    std::erase_if(parts, [](const Interval& p) { return !(p.hi > p.lo); });
    std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (const auto& p : parts) {
      if (!items_.empty() && p.lo <= items_.back().hi) {
        items_.back().hi = std::max(items_.back().hi, p.hi);
      } else {
        items_.push_back(p);
      }
    }
    prefix_.assign(items_.size() + 1, 0.0);
    for (std::size_t i = 0; i < items_.size(); ++i) prefix_[i + 1] = prefix_[i] + items_[i].length();
  }

  static IntervalSet full(Window w) { return IntervalSet(w, {{w.lo, w.hi}}); }

  const std::vector<Interval>& intervals() const { return items_; }
  const Window& window() const { return window_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }

  double measure() const { return prefix_.back(); }

  IntervalSet complement() const {
    std::vector<Interval> out;
    double cur = window_.lo;
    for (const auto& p : items_) {
      if (p.lo > cur) out.push_back({cur, p.lo});
      cur = p.hi;
    }
    if (cur < window_.hi) out.push_back({cur, window_.hi});
    return IntervalSet(window_, std::move(out));
  }

  /// m(E ∩ [a, b]).
  double overlap(double a, double b) const {
    if (!(b > a) || items_.empty()) return 0.0;
    return cumulative(b) - cumulative(a);
  }

  bool contains(double x) const {
    auto it = std::upper_bound(items_.begin(), items_.end(), x,
                               [](double v, const Interval& p) { return v < p.lo; });
    if (it == items_.begin()) return false;
    --it;
    return x <= it->hi;
  }

  /// Every interval of `other` lies inside one interval of this set.
  bool contains(const IntervalSet& other) const {
    for (const auto& q : other.items_) {
      auto it = std::upper_bound(items_.begin(), items_.end(), q.lo,
                                 [](double v, const Interval& p) { return v < p.lo; });
      if (it == items_.begin()) return false;
      --it;
      if (q.hi > it->hi) return false;
    }
    return true;
  }

  IntervalSet unite(const IntervalSet& other) const {
    Window w{std::min(window_.lo, other.window_.lo), std::max(window_.hi, other.window_.hi)};
    std::vector<Interval> all = items_;
    all.insert(all.end(), other.items_.begin(), other.items_.end());
    return IntervalSet(w, std::move(all));
  }

  IntervalSet intersect(const IntervalSet& other) const {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < items_.size() && j < other.items_.size()) {
      const double lo = std::max(items_[i].lo, other.items_[j].lo);
      const double hi = std::min(items_[i].hi, other.items_[j].hi);
      if (hi > lo) out.push_back({lo, hi});
      (items_[i].hi < other.items_[j].hi ? i : j)++;
    }
    return IntervalSet(window_, std::move(out));
  }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.window_.lo == b.window_.lo && a.window_.hi == b.window_.hi && a.items_ == b.items_;
  }

 private:
  // m(E ∩ (-inf, x])
  double cumulative(double x) const {
    auto it = std::upper_bound(items_.begin(), items_.end(), x,
                               [](double v, const Interval& p) { return v < p.lo; });
    const std::size_t k = static_cast<std::size_t>(it - items_.begin());
    if (k == 0) return 0.0;
    const Interval& last = items_[k - 1];
    return prefix_[k - 1] + std::min(x, last.hi) - last.lo;
  }

  Window window_{0.0, 0.0};
  std::vector<Interval> items_;
  std::vector<double> prefix_{0.0};
};

}  // namespace rsineq
