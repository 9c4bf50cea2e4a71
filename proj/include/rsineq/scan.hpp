// SPDX-License-Identifier: Apache-2.0
//
// Grid scan + Newton polish + branch-and-bound for univariate maxima.
//
// The bound step relies on a curvature constant K >= sup |v''| on the
// interval: inside a cell [l, r] the maximum of v is at most
// max(v(l), v(r)) + K (r - l)^2 / 8, since an interior maximum is a
// stationary point. Cells whose bound cannot beat the incumbent are
// discarded, the rest are bisected.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace rsineq::detail {

struct ScanOptions {
  int newton_iters = 30;
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  std::size_t max_evals = 400000;
};

struct Extremum {
  double best = -std::numeric_limits<double>::infinity();
  double witness = 0.0;
  /// Upper bound on sup v over the interval. Equal to `best` when no curvature bound was given.
  double bound = -std::numeric_limits<double>::infinity();
  bool converged = false;
};

class Incumbent {
 public:
  void offer(double x, double v) {
    if (!std::isfinite(v)) return;
    if (v > best_) {
      best_ = v;
      // Keep earlier witnesses that are still ties.
      std::vector<std::pair<double, double>> kept;
      for (auto& c : cands_)
        if (tie(c.second)) kept.push_back(c);
      cands_.swap(kept);
    }
    if (tie(v)) cands_.emplace_back(x, v);
  }
  double best() const { return best_; }
  double witness() const {
    double w = std::numeric_limits<double>::infinity();
    for (auto& c : cands_)
      if (tie(c.second)) w = std::min(w, c.first);
    return w;
  }

 private:
  bool tie(double v) const { return v >= best_ - 4e-16 * std::max(std::abs(best_), 1e-300); }
  double best_ = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> cands_;
};

/// Maximizes `value` on [a, b] from a uniform grid of step <= h. `slope` and
/// `curvature` are the first and second derivative of the smooth function whose
/// stationary points are the local maxima of `value` (for value = |f|, pass f'
/// and f''). Pass a non-finite `curvature_bound` to skip the rigorous bound.
/// `third_bound`, when finite, bounds |v'''| and lets cells use the local
/// curvature |curvature(mid)| + third_bound * width / 2 instead of the global one.
template <class V, class D1, class D2>
Extremum maximize(V&& value, D1&& slope, D2&& curvature, double a, double b, double h,
                  double curvature_bound, const ScanOptions& opt = {},
                  double third_bound = std::numeric_limits<double>::quiet_NaN()) {
  const std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / h)));
  const double w = (b - a) / static_cast<double>(n);
  std::vector<double> xs(n + 1), vs(n + 1);
  Incumbent inc;
  for (std::size_t i = 0; i <= n; ++i) {
    xs[i] = i == n ? b : a + w * static_cast<double>(i);
    vs[i] = value(xs[i]);
    inc.offer(xs[i], vs[i]);
  }

  // Newton polish from every grid-local maximum.
  for (std::size_t i = 0; i <= n; ++i) {
    const bool left_ok = i == 0 || vs[i] >= vs[i - 1];
    const bool right_ok = i == n || vs[i] >= vs[i + 1];
    if (!left_ok || !right_ok) continue;
    const double lo = std::max(a, xs[i] - w);
    const double hi = std::min(b, xs[i] + w);
    double x = xs[i];
    for (int it = 0; it < opt.newton_iters; ++it) {
      const double s2 = curvature(x);
      if (s2 == 0.0 || !std::isfinite(s2)) break;
      const double step = slope(x) / s2;
      const double xn = x - step;
      if (!(xn >= lo && xn <= hi)) break;
      x = xn;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    if (x != xs[i]) inc.offer(x, value(x));
  }

  Extremum out;
  if (!std::isfinite(curvature_bound)) {
    out.best = inc.best();
    out.witness = inc.witness();
    out.bound = out.best;
    return out;
  }

  const double K = std::max(0.0, curvature_bound);
  const bool local = std::isfinite(third_bound);
  auto tol = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(inc.best())); };
  struct Cell {
    double l, vl, r, vr, k;
  };
  auto upper = [](const Cell& c) {
    const double width = c.r - c.l;
    return std::max(c.vl, c.vr) + c.k * width * width / 8.0;
  };
  std::vector<Cell> work;
  for (std::size_t i = 0; i < n; ++i) {
    Cell c{xs[i], vs[i], xs[i + 1], vs[i + 1], K};
    if (upper(c) > inc.best() + tol()) work.push_back(c);
  }
  std::size_t evals = 0;
  double leftover = -std::numeric_limits<double>::infinity();
  while (!work.empty()) {
    Cell c = work.back();
    work.pop_back();
    if (upper(c) <= inc.best() + tol()) continue;
    const double m = 0.5 * (c.l + c.r);
    if (evals >= opt.max_evals || m <= c.l || m >= c.r) {
      leftover = std::max(leftover, upper(c));
      continue;
    }
    const double vm = value(m);
    ++evals;
    inc.offer(m, vm);
    if (local) {
      const double kl = std::abs(curvature(m)) + third_bound * (c.r - c.l) / 2.0;
      if (std::isfinite(kl)) c.k = std::min(c.k, kl);
      if (upper(c) <= inc.best() + tol()) continue;
    }
    work.push_back({m, vm, c.r, c.vr, c.k});
    work.push_back({c.l, c.vl, m, vm, c.k});
  }
  out.best = inc.best();
  out.witness = inc.witness();
  out.bound = std::max(out.best + tol(), leftover);
  out.converged = !(leftover > out.best + tol());
  return out;
}

/// Plain grid maximum of v on [a, b].
template <class V>
double grid_max(V&& value, double a, double b, double h) {
  const std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / h)));
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = i == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    m = std::max(m, value(x));
  }
  return m;
}

}  // namespace rsineq::detail
