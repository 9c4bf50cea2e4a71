// SPDX-License-Identifier: Apache-2.0
//
// Sublevel sets E_alpha = {|Q| < alpha}, (L, delta)-density, the constructive
// alpha* and the empirical Remez-type constant chain.

#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "rsineq/certificates.hpp"
#include "rsineq/families.hpp"
#include "rsineq/interval_set.hpp"
#include "rsineq/norms.hpp"

namespace rsineq {

struct SublevelComponent {
  Interval span;
  std::vector<double> zeros;
  bool bounded = true;  // does not touch the window edge
};

struct SublevelSet {
  IntervalSet set;
  std::vector<SublevelComponent> components;
  bool tangency = false;
};

struct DensityReport {
  double L = 0.0;
  double delta = 0.0;
  bool is_dense = false;
  double worst_window_start = 0.0;
  double worst_measure = 0.0;
};

namespace detail {

template <class F>
double bisect_crossing(F&& phi, double inside, double outside, int iters = 80) {
  // phi(inside) < 0 <= phi(outside); returns the outside-most point still known inside.
  for (int i = 0; i < iters; ++i) {
    const double m = 0.5 * (inside + outside);
    if (m == inside || m == outside) break;
    (phi(m) < 0.0 ? inside : outside) = m;
  }
  return inside;
}

template <class F>
double golden_min(F&& v, double a, double b, int iters = 80) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = v(c), fd = v(d);
  for (int i = 0; i < iters && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = v(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = v(d);
    }
  }
  return fc < fd ? c : d;
}

}  // namespace detail

/// {x in window : |Q(x)| < alpha} as closed intervals, each tagged with the zeros it contains.
/// Near-tangent dips (alpha <= min |Q| <= alpha (1 + 1e-9)) set `tangency` and are
/// included as a component of width 2h, which only shrinks the complement.
inline SublevelSet sublevel_set(const ExpTypeFn& Q, double alpha, Window window, const GridSpec& grid = {}) {
  if (!(alpha > 0.0)) throw std::invalid_argument("sublevel_set: alpha must be positive");
  if (!(window.hi > window.lo)) throw std::invalid_argument("sublevel_set: empty window");
  auto phi = [&](double x) { return std::abs(Q(x)) - alpha; };
  const double h0 = grid.step > 0.0 ? grid.step : default_step(Q.type_bound());
  const std::size_t n = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(window.length() / detail::clamp_step(h0, window.length()))));
  const double h = window.length() / static_cast<double>(n);
  std::vector<double> xs(n + 1), ps(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    xs[i] = i == n ? window.hi : window.lo + h * static_cast<double>(i);
    ps[i] = phi(xs[i]);
  }

  SublevelSet out;
  std::vector<Interval> parts;
  // Sign-change components.
  std::size_t i = 0;
  while (i <= n) {
    if (ps[i] >= 0.0) {
      ++i;
      continue;
    }
    const std::size_t first = i;
    while (i <= n && ps[i] < 0.0) ++i;
    const std::size_t last = i - 1;
    const double a = first == 0 ? window.lo : detail::bisect_crossing(phi, xs[first], xs[first - 1]);
    const double b = last == n ? window.hi : detail::bisect_crossing(phi, xs[last], xs[last + 1]);
    parts.push_back({a, b});
  }
  // Dips between grid points that the samples missed.
  for (std::size_t k = 1; k < n; ++k) {
    if (ps[k] < 0.0 || ps[k] > ps[k - 1] || ps[k] > ps[k + 1]) continue;
    const double xm = detail::golden_min(phi, xs[k - 1], xs[k + 1]);
    const double pm = phi(xm);
    if (pm < 0.0) {
      const double a = detail::bisect_crossing(phi, xm, xs[k - 1]);
      const double b = detail::bisect_crossing(phi, xm, xs[k + 1]);
      parts.push_back({a, b});
    } else if (pm <= 1e-9 * alpha) {
      out.tangency = true;
      parts.push_back({xm - h, xm + h});
    }
  }
  out.set = IntervalSet(window, std::move(parts));

  // Pad the zero search so zeros sitting on the window edge are bracketed.
  const auto zs = Q.is_constant() ? ZeroSet{} : real_zeros(Q, Window{window.lo - h, window.hi + h}, grid);
  std::vector<double> all = zs.zeros;
  all.insert(all.end(), zs.multiplicity_suspect.begin(), zs.multiplicity_suspect.end());
  std::sort(all.begin(), all.end());
  for (const auto& iv : out.set.intervals()) {
    SublevelComponent c;
    c.span = iv;
    c.bounded = iv.lo > window.lo && iv.hi < window.hi;
    for (double z : all)
      if (z >= iv.lo && z <= iv.hi) c.zeros.push_back(z);
    out.components.push_back(std::move(c));
  }
  return out;
}

/// Exact minimum over t of m(E ∩ [t, t + L]) for windows inside E's window.
/// The overlap is piecewise linear in t with breakpoints at a_i, b_i, a_i - L, b_i - L,
/// so evaluating at the breakpoints is exact.
inline DensityReport ld_dense_check(const IntervalSet& E, double L, double delta) {
  if (!(delta > 0.0) || !(delta <= L)) throw std::invalid_argument("ld_dense_check: need 0 < delta <= L");
  const Window& w = E.window();
  if (w.length() < L) throw std::invalid_argument("ld_dense_check: window shorter than L");
  const double tmax = w.hi - L;
  std::vector<double> ts{w.lo, tmax};
  for (const auto& iv : E.intervals()) {
    for (double t : {iv.lo, iv.hi, iv.lo - L, iv.hi - L})
      if (t >= w.lo && t <= tmax) ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  DensityReport r;
  r.L = L;
  r.delta = delta;
  r.worst_measure = std::numeric_limits<double>::infinity();
  for (double t : ts) {
    const double m = E.overlap(t, t + L);
    if (m < r.worst_measure) {
      r.worst_measure = m;
      r.worst_window_start = t;
    }
  }
  r.is_dense = r.worst_measure >= delta - 1e-12;
  return r;
}

struct AlphaStar {
  double alpha_star = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double C2 = 0.0;
  double d = 1.0;
  double s = 0.0;
  Window window;
  IntervalSet E_star;
  SublevelSet sublevel;  // at alpha*
  bool window_limited = false;
};

/// Default window for the density machinery: for periodic Q, two periods on each
/// side of a maximizer of |Q| (so sublevel components never touch the edges);
/// otherwise the zero-search window.
inline Window default_density_window(const ExpTypeFn& Q, const GridSpec& grid = {}) {
  if (auto P = Q.period()) {
    const Enclosure m = sup_norm(Q, grid);
    return {m.witness - 2.0 * *P, m.witness + 2.0 * *P};
  }
  if (grid.window > 0.0) return {-grid.window, grid.window};
  return default_zero_window(Q);
}

/// alpha* = min(alpha1, alpha2) and E* = {|Q| >= alpha*} on the window.
inline AlphaStar alpha_star(const ExpTypeFn& Q, double s, double d, std::optional<Window> window = std::nullopt,
                            const GridSpec& grid = {}) {
  if (!(s >= 0.0)) throw std::invalid_argument("alpha_star: s must be nonnegative");
  if (!(d > 0.0)) throw std::invalid_argument("alpha_star: d must be positive");
  const Enclosure A = inf_quadratic(Q, s, grid);
  if (!(A.lo > 0.0)) throw HypothesisError("A_s(Q) > 0", "enclosure contains 0");

  AlphaStar r;
  r.s = s;
  r.d = d;
  r.window = window.value_or(default_density_window(Q, grid));
  r.C2 = std::sqrt(A.lo);
  r.alpha2 = d * r.C2 / std::sqrt(64.0 + d * d * s * s);

  auto ok = [&](double alpha) {
    const auto sub = sublevel_set(Q, alpha, r.window, grid);
    for (const auto& c : sub.components)
      if (!c.bounded || c.span.length() > d / 4.0 + 1e-12 || c.zeros.size() != 1) return false;
    return true;
  };
  const double upper = s > 0.0 ? r.C2 / s : window_max_abs(Q, r.window.lo, r.window.hi);
  if (ok(upper)) {
    r.alpha1 = upper;
  } else {
    double lo = 0.0, hi = upper;
    for (int it = 0; it < 60; ++it) {
      const double m = 0.5 * (lo + hi);
      (ok(m) ? lo : hi) = m;
    }
    r.alpha1 = lo;
  }
  r.alpha_star = std::min(r.alpha1, r.alpha2);
  if (!(r.alpha_star > 0.0)) throw HypothesisError("alpha* > 0", "no admissible sublevel level on the window");
  r.sublevel = sublevel_set(Q, r.alpha_star, r.window, grid);
  r.E_star = r.sublevel.set.complement();
  bool bounded = true;
  for (const auto& c : r.sublevel.components) bounded = bounded && c.bounded;
  const auto p = as_polynomial(Q);
  r.window_limited = !bounded || !(Q.period() || p);
  return r;
}

struct ChainResult {
  double C1_est = 1.0;
  double C3_est = 0.0;
  double alpha_star = 0.0;
  std::vector<double> ratios;
  int violations = 0;  // members with ||f|| > C3_est ||Q f|| on the window
  std::size_t checked = 0;
};

/// Empirical Remez-type constant on E*: C1 = max over the family of
/// max_window |f| / max_{E*} |f|, then C3 = C1 / alpha*.
inline ChainResult schur_constant_chain(const ExpTypeFn& Q, double sigma, double tau,
                                        const std::vector<ExpTypeFn>& family, const GridSpec& grid = {}) {
  const double s = sigma + tau;
  const double d = Q.is_constant() ? 1.0 : real_zeros(Q, std::nullopt, grid).separation;
  const AlphaStar as = alpha_star(Q, s, d, std::nullopt, grid);
  ChainResult out;
  out.alpha_star = as.alpha_star;
  const double h0 = grid.step > 0.0 ? grid.step : default_step(std::max(sigma, Q.type_bound()));
  const Window& w = as.window;
  for (const auto& f : family) {
    const double num = window_max_abs(f, w.lo, w.hi, h0);
    double den = 0.0;
    for (const auto& iv : as.E_star.intervals())
      den = std::max(den, window_max_abs(f, iv.lo, iv.hi, std::min(h0, iv.length() / 2.0)));
    // E* is a subset of the window, so the ratio is at least one.
    const double ratio = den > 0.0 ? std::max(num, den) / den : std::numeric_limits<double>::infinity();
    out.ratios.push_back(ratio);
    out.C1_est = std::max(out.C1_est, ratio);
  }
  out.C3_est = out.C1_est / as.alpha_star;
  for (const auto& f : family) {
    const double fn = window_max_abs(f, w.lo, w.hi, h0);
    const double qf = window_max_abs(multiply(Q, f), w.lo, w.hi, h0);
    if (fn > out.C3_est * qf * (1.0 + 1e-9)) ++out.violations;
    ++out.checked;
  }
  return out;
}

/// Seeded family of random trigonometric polynomials of type sigma.
inline ChainResult schur_constant_chain(const ExpTypeFn& Q, double sigma, double tau, int family_size,
                                        std::uint64_t seed, const GridSpec& grid = {}) {
  Rng rng(seed);
  std::vector<ExpTypeFn> fam;
  for (int i = 0; i < family_size; ++i) fam.push_back(random_trig_poly(rng, sigma, 4));
  return schur_constant_chain(Q, sigma, tau, fam, grid);
}

}  // namespace rsineq
