// SPDX-License-Identifier: Apache-2.0
//
// Sup norms, the quadratic infimum A_s(Q) = inf_t Q'(t)^2 + s^2 Q(t)^2, and
// real zeros of an ExpTypeFn.
//
// A sup norm is certified when the whole real line is covered: periodic
// trees are scanned over one period, decaying trees over a window plus the
// envelope tail. The upper end of the enclosure comes from Bernstein's
// inequality applied twice (|f''| <= type^2 sup|f|) inside a cell-wise
// branch-and-bound; the grid-to-continuum factor 1/(1 - type h/2) seeds it.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rsineq/expr.hpp"
#include "rsineq/scan.hpp"

namespace rsineq {

struct GridSpec {
  double window = 0.0;  // half-width W; 0 selects the default
  double step = 0.0;    // h; 0 selects the default
  int refine_iters = 30;
  bool bernstein_slack = true;
};

struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;
  double witness = 0.0;
  bool certified = false;
  bool window_limited = false;
  bool unbounded_suspected = false;
};

struct Window {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct ZeroSet {
  std::vector<double> zeros;
  double separation = 1.0;
  bool window_limited = true;
  /// Points where |Q| touches ~0 without changing sign.
  std::vector<double> multiplicity_suspect;
};

/// Raised when a computed quantity contradicts a proved property (signals a bug).
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline double default_step(double type_bound) {
  return std::min(0.01, 0.1 / std::max(1.0, type_bound));
}

inline double default_half_window(const ExpTypeFn& f) {
  return std::max(50.0, f.period() ? 10.0 * *f.period() : 0.0);
}

namespace detail {

inline double cauchy_radius(const std::vector<double>& c) {
  if (c.size() < 2) return 0.0;
  double r = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) r = std::max(r, std::abs(c[i] / c.back()));
  return 1.0 + r;
}

inline std::vector<double> poly_derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  if (d.empty()) d.push_back(0.0);
  return trim(d);
}

inline double clamp_step(double h, double length, double max_points = 2e6) {
  return std::max(h, length / max_points);
}

}  // namespace detail

/// Max of |f| on a uniform grid over [a, b].
inline double window_max_abs(const ExpTypeFn& f, double a, double b, double h = 0.0) {
  if (h <= 0.0) h = default_step(f.type_bound());
  h = detail::clamp_step(h, b - a);
  return detail::grid_max([&](double x) { return std::abs(f(x)); }, a, b, h);
}

/// Enclosure of sup_{x real} |f(x)|.
inline Enclosure sup_norm(const ExpTypeFn& f, const GridSpec& grid = {}) {
  Enclosure e;
  if (f.is_constant()) {
    const double v = std::abs(f(0.0));
    return Enclosure{v, v, 0.0, true, false, false};
  }
  const double gamma = f.type_bound();
  const double h0 = grid.step > 0.0 ? grid.step : default_step(gamma);
  const ExpTypeFn d1 = derivative(f);
  const ExpTypeFn d2 = derivative(d1);
  auto value = [&](double x) { return std::abs(f(x)); };
  auto slope = [&](double x) { return d1(x); };
  auto curv = [&](double x) { return d2(x); };
  detail::ScanOptions opt;
  opt.newton_iters = grid.refine_iters;

  const bool periodic = f.period().has_value();
  const auto env = f.decay();
  const bool certifiable = periodic || env.has_value();
  const bool bernstein = grid.bernstein_slack && gamma * h0 < 1.0;

  double W = grid.window > 0.0 ? grid.window : default_half_window(f);
  if (env) W = std::max(W, env->radius + 2.0);

  for (int attempt = 0;; ++attempt) {
    const double a = periodic ? 0.0 : -W;
    const double b = periodic ? *f.period() : W;
    const double h = detail::clamp_step(h0, b - a);
    const double tail = (!periodic && env) ? env->scale / (W - env->radius) : 0.0;
    double K = std::numeric_limits<double>::quiet_NaN();
    double K3 = K;
    if (certifiable && bernstein) {
      const double lo_grid = detail::grid_max(value, a, b, h);
      const double H0 = std::max(lo_grid / (1.0 - gamma * h / 2.0), tail);
      K = gamma * gamma * H0;
      K3 = gamma * K;
    }
    const auto ext = detail::maximize(value, slope, curv, a, b, h, K, opt, K3);
    e.lo = ext.best;
    e.witness = ext.witness;
    if (certifiable && bernstein) {
      e.hi = std::max(ext.bound, tail);
      e.certified = ext.converged;
    } else {
      e.hi = ext.best;
      e.certified = false;
    }
    if (!periodic && env && tail > e.lo && attempt < 3) {
      W *= 4.0;
      continue;
    }
    if (!certifiable) {
      e.window_limited = true;
      const double m1 = e.lo;
      const double m2 = window_max_abs(f, -2.0 * W, 2.0 * W, h);
      const double m4 = window_max_abs(f, -4.0 * W, 4.0 * W, h);
      e.unbounded_suspected = m1 > 0.0 && m2 >= 1.8 * m1 && m4 >= 1.8 * m2;
    }
    return e;
  }
}

/// Enclosure of A_s(Q) = inf_t Q'(t)^2 + s^2 Q(t)^2. `witness` is the leftmost minimizer found.
inline Enclosure inf_quadratic(const ExpTypeFn& Q, double s, const GridSpec& grid = {}) {
  if (s < 0.0) throw std::invalid_argument("inf_quadratic: s must be nonnegative");
  if (Q.is_constant()) {
    const double c = Q(0.0);
    const double v = s * s * c * c;
    return Enclosure{v, v, 0.0, true, false, false};
  }
  const ExpTypeFn q1 = derivative(Q);
  const ExpTypeFn q2 = derivative(q1);
  const ExpTypeFn q3 = derivative(q2);
  const double s2 = s * s;
  auto phi = [&](double x) {
    const double a = q1(x), b = Q(x);
    return a * a + s2 * b * b;
  };
  auto neg_phi = [&](double x) { return -phi(x); };
  auto dphi = [&](double x) {
    const double q = Q(x), a = q1(x);
    return 2.0 * a * q2(x) + 2.0 * s2 * q * a;
  };
  auto d2phi = [&](double x) {
    const double q = Q(x), a = q1(x), b = q2(x);
    return 2.0 * b * b + 2.0 * a * q3(x) + 2.0 * s2 * (a * a + q * b);
  };
  const double gamma = Q.type_bound();
  detail::ScanOptions opt;
  opt.newton_iters = grid.refine_iters;

  Enclosure e;
  double a = 0.0, b = 0.0;
  double h = grid.step > 0.0 ? grid.step : default_step(2.0 * gamma);
  double K = std::numeric_limits<double>::quiet_NaN();
  double K3 = K;
  bool lower_is_zero = false;

  if (auto p = as_polynomial(Q)) {
    // phi is a polynomial tending to +inf (or constant); its minimum sits at a
    // real root of phi', all of which lie inside the Cauchy radius.
    const auto dq = detail::poly_derivative(*p);
    std::vector<double> ph(std::max(dq.size() * 2 - 1, p->size() * 2 - 1), 0.0);
    for (std::size_t i = 0; i < dq.size(); ++i)
      for (std::size_t j = 0; j < dq.size(); ++j) ph[i + j] += dq[i] * dq[j];
    for (std::size_t i = 0; i < p->size(); ++i)
      for (std::size_t j = 0; j < p->size(); ++j) ph[i + j] += s2 * (*p)[i] * (*p)[j];
    ph = detail::trim(ph);
    const double R = detail::cauchy_radius(detail::poly_derivative(ph)) + 1.0;
    a = -R;
    b = R;
    const auto dd = detail::poly_derivative(detail::poly_derivative(ph));
    K = 0.0;
    for (std::size_t i = 0; i < dd.size(); ++i) K += std::abs(dd[i]) * std::pow(R, static_cast<double>(i));
    opt.abs_tol = 1e-13;
    e.certified = true;
  } else if (Q.period()) {
    a = 0.0;
    b = *Q.period();
    const double H = sup_norm(Q, grid).hi;
    const double phi_max = (gamma * gamma + s2) * H * H;
    K = 4.0 * gamma * gamma * phi_max;
    K3 = 2.0 * gamma * K;
    opt.abs_tol = 1e-14 * std::max(phi_max, 1e-300);
    e.certified = true;
  } else {
    const double W = grid.window > 0.0 ? grid.window : default_half_window(Q);
    a = -W;
    b = W;
    // A decaying Q has Q, Q' -> 0, so the infimum over the line is 0.
    lower_is_zero = Q.decay().has_value();
    e.certified = lower_is_zero;
    e.window_limited = !lower_is_zero;
  }
  h = detail::clamp_step(h, b - a);
  const auto ext = detail::maximize(neg_phi, dphi, d2phi, a, b, h, K, opt, K3);
  e.hi = -ext.best;
  e.lo = lower_is_zero ? 0.0 : std::max(0.0, -ext.bound);
  e.witness = ext.witness;
  if (e.certified && !lower_is_zero && !ext.converged) e.certified = false;
  return e;
}

/// A_s(Q) for ascending s. Throws InternalConsistencyError if the lower ends decrease by more than 1e-9.
inline std::vector<Enclosure> a_s_profile(const ExpTypeFn& Q, const std::vector<double>& s_values,
                                          const GridSpec& grid = {}) {
  if (!std::is_sorted(s_values.begin(), s_values.end()))
    throw std::invalid_argument("a_s_profile: s values must be ascending");
  std::vector<Enclosure> out;
  out.reserve(s_values.size());
  for (double s : s_values) {
    out.push_back(inf_quadratic(Q, s, grid));
    if (out.size() > 1) {
      const double prev = out[out.size() - 2].lo;
      if (out.back().lo < prev - 1e-9 * std::max(1.0, prev)) {
        throw InternalConsistencyError("a_s_profile: A_s(Q) decreased in s");
      }
    }
  }
  return out;
}

namespace detail {

struct RootScan {
  std::vector<double> roots;
  std::vector<double> touches;
};

inline RootScan scan_roots(const ExpTypeFn& f, const ExpTypeFn& df, const ExpTypeFn& d2f, double a,
                           double b, double h) {
  const std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / h)));
  std::vector<double> xs(n + 1), vs(n + 1);
  double scale = 1.0;
  for (std::size_t i = 0; i <= n; ++i) {
    xs[i] = i == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    vs[i] = f(xs[i]);
    scale = std::max(scale, std::abs(vs[i]));
  }
  RootScan out;
  for (std::size_t i = 0; i <= n; ++i) {
    if (vs[i] == 0.0) {
      out.roots.push_back(xs[i]);
      continue;
    }
    if (i == n || vs[i + 1] == 0.0 || (vs[i] > 0.0) == (vs[i + 1] > 0.0)) continue;
    double l = xs[i], r = xs[i + 1], fl = vs[i];
    for (int it = 0; it < 200 && r - l > 0.0; ++it) {
      const double m = 0.5 * (l + r);
      if (m <= l || m >= r) break;
      const double fm = f(m);
      if (fm == 0.0) {
        l = r = m;
        break;
      }
      if ((fm > 0.0) == (fl > 0.0)) {
        l = m;
        fl = fm;
      } else {
        r = m;
      }
    }
    double x = 0.5 * (l + r);
    for (int it = 0; it < 3; ++it) {
      const double d = df(x);
      if (d == 0.0) break;
      const double xn = x - f(x) / d;
      if (!(xn >= xs[i] && xn <= xs[i + 1])) break;
      if (std::abs(f(xn)) > std::abs(f(x))) break;
      x = xn;
    }
    out.roots.push_back(x);
  }
  // |f| dipping to ~0 between grid points without a sign change.
  for (std::size_t i = 1; i < n; ++i) {
    const double v = std::abs(vs[i]);
    if (vs[i] == 0.0 || v > std::abs(vs[i - 1]) || v > std::abs(vs[i + 1])) continue;
    if ((vs[i - 1] > 0.0) != (vs[i] > 0.0) || (vs[i + 1] > 0.0) != (vs[i] > 0.0)) continue;
    double x = xs[i];
    for (int it = 0; it < 40; ++it) {
      const double c = d2f(x);
      if (c == 0.0) break;
      const double xn = x - df(x) / c;
      if (!(xn >= xs[i - 1] && xn <= xs[i + 1])) break;
      x = xn;
    }
    if (std::abs(f(x)) <= 1e-10 * scale) out.touches.push_back(x);
  }
  auto dedupe = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    std::vector<double> u;
    for (double z : v)
      if (u.empty() || z - u.back() > 1e-9 * (1.0 + std::abs(z))) u.push_back(z);
    v.swap(u);
  };
  dedupe(out.roots);
  dedupe(out.touches);
  return out;
}

}  // namespace detail

/// Default search window for real_zeros: one period, the Cauchy disc of a
/// polynomial, or [-W, W].
inline Window default_zero_window(const ExpTypeFn& Q) {
  if (Q.period()) return {0.0, *Q.period()};
  if (auto p = as_polynomial(Q)) {
    const double R = detail::cauchy_radius(*p) + 1.0;
    return {-R, R};
  }
  const double W = default_half_window(Q);
  return {-W, W};
}

/// Sign-change zeros of Q in `window` and the separation d (1 with fewer than two zeros).
inline ZeroSet real_zeros(const ExpTypeFn& Q, std::optional<Window> window = std::nullopt,
                          const GridSpec& grid = {}) {
  const Window w = window.value_or(default_zero_window(Q));
  if (!(w.hi > w.lo)) throw std::invalid_argument("real_zeros: empty window");
  ZeroSet z;
  if (Q.is_constant()) {
    if (Q(0.0) == 0.0) throw std::invalid_argument("real_zeros: Q vanishes identically");
    z.window_limited = false;
    return z;
  }
  const ExpTypeFn d1 = derivative(Q);
  const ExpTypeFn d2 = derivative(d1);
  double h = grid.step > 0.0 ? grid.step : default_step(Q.type_bound());
  const auto scan = detail::scan_roots(Q, d1, d2, w.lo, w.hi, detail::clamp_step(h, w.length()));
  z.zeros = scan.roots;
  z.multiplicity_suspect = scan.touches;

  auto min_gap = [](const std::vector<double>& v) {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < v.size(); ++i) g = std::min(g, v[i] - v[i - 1]);
    return g;
  };

  if (Q.period()) {
    const double P = *Q.period();
    auto one = (w.lo == 0.0 && w.hi == P)
                   ? scan
                   : detail::scan_roots(Q, d1, d2, 0.0, P, detail::clamp_step(h, P));
    auto& r = one.roots;
    if (r.size() > 1 && r.front() < 1e-9 * P && r.back() > P * (1.0 - 1e-9)) r.pop_back();
    if (!r.empty()) {
      double g = r.front() + P - r.back();
      if (r.size() == 1) g = P;
      z.separation = std::min(g, min_gap(r));
    }
    z.window_limited = w.length() < P * (1.0 - 1e-12);
    return z;
  }
  if (z.zeros.size() >= 2) z.separation = min_gap(z.zeros);
  if (auto p = as_polynomial(Q)) {
    const double R = detail::cauchy_radius(*p);
    z.window_limited = !(w.lo < -R && w.hi > R);
  }
  return z;
}

}  // namespace rsineq
