// SPDX-License-Identifier: Apache-2.0
//
// Inequality checks of the form  sup|f| <= constant * sup|Q f|  and the
// pointwise Duffin-Schaeffer bound, with equality diagnosis.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsineq/expr.hpp"
#include "rsineq/norms.hpp"

namespace rsineq {

enum class InequalityId {
  RS_CLASSIC,        // ||P|| <= (n+1) ||sqrt(1-t^2) P(t)||  on [-1, 1]
  RS_TRIG,           // ||T|| <= (n+1) ||sin t T(t)||        on [-pi, pi)
  SCHUR_POLY,        // ||P|| <= (n+1) ||t P(t)||            on [-1, 1]
  MAIN,              // |f(x)| <= (sigma+tau) A_{sigma+tau}(Q)^{-1/2} ||Q f||
  COR_SIN,           // Q = sin(tau x), constant sigma/tau + 1
  COR_X,             // Q = x, constant sigma
  DUFFIN_SCHAEFFER,  // g'(x)^2 + gamma^2 g(x)^2 <= gamma^2 ||g||^2
};

enum class Verdict {
  HOLDS_CERTIFIED,
  HOLDS_OBSERVED,
  EQUALITY_WITHIN_TOL,
  VIOLATION_SUSPECTED,
  INCONCLUSIVE,  // negative margin but at least one side uncertified
};

inline constexpr std::array<std::string_view, 7> kInequalityNames = {
    "RS_CLASSIC", "RS_TRIG", "SCHUR_POLY", "MAIN", "COR_SIN", "COR_X", "DUFFIN_SCHAEFFER"};
inline constexpr std::array<std::string_view, 5> kVerdictNames = {
    "HOLDS_CERTIFIED", "HOLDS_OBSERVED", "EQUALITY_WITHIN_TOL", "VIOLATION_SUSPECTED",
    "INCONCLUSIVE"};

inline std::string to_string(InequalityId id) {
  return std::string(kInequalityNames[static_cast<std::size_t>(id)]);
}
inline std::string to_string(Verdict v) {
  return std::string(kVerdictNames[static_cast<std::size_t>(v)]);
}
inline InequalityId inequality_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kInequalityNames.size(); ++i)
    if (kInequalityNames[i] == s) return static_cast<InequalityId>(i);
  throw std::invalid_argument("unknown inequality id: " + std::string(s));
}
inline Verdict verdict_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kVerdictNames.size(); ++i)
    if (kVerdictNames[i] == s) return static_cast<Verdict>(i);
  throw std::invalid_argument("unknown verdict: " + std::string(s));
}

struct EqualityDiagnosis {
  double x0 = 0.0;
  double fprime_at_x0 = 0.0;
  double fitted_S = 0.0;
  double fitted_C = 0.0;
  double residual_sup = 0.0;
  /// |(Qf)(x0)| reaches ||Qf|| (the alternative branch of the dichotomy).
  bool attains_weighted_norm = false;
  bool fit_failed = false;
};

struct Certificate {
  InequalityId inequality_id = InequalityId::MAIN;
  Enclosure lhs;
  double constant = 0.0;
  Enclosure rhs_norm;
  double margin = 0.0;
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::optional<EqualityDiagnosis> equality_diag;

  std::optional<Enclosure> a_enclosure;    // A_{sigma+tau}(Q)
  std::optional<double> zero_separation;   // d
  std::optional<double> refined_constant;  // odd-degree Schur constant n
  std::optional<double> refined_margin;
  std::optional<bool> equality_everywhere;  // Duffin-Schaeffer only
  bool rhs_unbounded_suspected = false;
};

/// A theorem hypothesis failed for the given input; the check is not applicable.
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(std::string hypothesis, const std::string& detail)
      : std::runtime_error("hypothesis failed: " + hypothesis + " (" + detail + ")"),
        hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const { return hypothesis_; }

 private:
  std::string hypothesis_;
};

inline constexpr double kEqualityRelTol = 1e-6;

/// Verdict from margin = constant * rhs.lo - lhs.hi.
inline Verdict classify(double margin, double constant, const Enclosure& lhs, const Enclosure& rhs) {
  const double tol = kEqualityRelTol * constant * rhs.lo;
  if (std::abs(margin) <= tol) return Verdict::EQUALITY_WITHIN_TOL;
  const bool cert = lhs.certified && rhs.certified;
  if (margin > 0.0) return cert ? Verdict::HOLDS_CERTIFIED : Verdict::HOLDS_OBSERVED;
  return cert ? Verdict::VIOLATION_SUSPECTED : Verdict::INCONCLUSIVE;
}

namespace detail {

inline void settle(Certificate& c) {
  c.margin = c.constant * c.rhs_norm.lo - c.lhs.hi;
  c.verdict = classify(c.margin, c.constant, c.lhs, c.rhs_norm);
  if (c.rhs_unbounded_suspected && c.verdict != Verdict::VIOLATION_SUSPECTED) {
    // ||Q f|| = infinity makes the inequality vacuous.
    c.verdict = Verdict::HOLDS_OBSERVED;
  }
}

inline Window scan_domain(const ExpTypeFn& g, const GridSpec& grid) {
  if (g.period()) return {0.0, *g.period()};
  const double W = grid.window > 0.0 ? grid.window : default_half_window(g);
  return {-W, W};
}

inline double cond2x2(double a, double b, double c, double d) {
  // singular values of [[a, b], [c, d]]
  const double s1 = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  const double disc = std::sqrt(std::max(0.0, s1 * s1 - 4.0 * det * det));
  const double big = std::sqrt((s1 + disc) / 2.0);
  const double small = std::sqrt(std::max(0.0, (s1 - disc) / 2.0));
  return small > 0.0 ? big / small : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Fits Q f = S sin((sigma+tau) x) + C cos((sigma+tau) x) and reports f'(x0) and the residual.
inline EqualityDiagnosis diagnose_equality(const ExpTypeFn& Q, const ExpTypeFn& f, double sigma,
                                           double tau, double x0, const GridSpec& grid = {}) {
  EqualityDiagnosis d;
  d.x0 = x0;
  const ExpTypeFn g = multiply(Q, f);
  const double w = sigma + tau;
  d.fprime_at_x0 = derivative(f)(x0);
  const Enclosure gn = sup_norm(g, grid);
  d.attains_weighted_norm = std::abs(g(x0)) >= gn.lo * (1.0 - kEqualityRelTol);

  const double h = grid.step > 0.0 ? grid.step : default_step(std::max(w, g.type_bound()));
  bool ok = false;
  for (int attempt = 0; attempt <= 5 && !ok; ++attempt) {
    const double p1 = x0 + 0.37 / w + attempt * 7.3 * h;
    const double p2 = p1 + detail::kPi / (2.0 * w);
    const double a = std::sin(w * p1), b = std::cos(w * p1);
    const double c = std::sin(w * p2), e = std::cos(w * p2);
    if (detail::cond2x2(a, b, c, e) >= 1e3) continue;
    const double det = a * e - b * c;
    const double g1 = g(p1), g2 = g(p2);
    d.fitted_S = (g1 * e - b * g2) / det;
    d.fitted_C = (a * g2 - c * g1) / det;
    ok = true;
  }
  if (!ok) {
    d.fit_failed = true;
    d.residual_sup = std::numeric_limits<double>::infinity();
    return d;
  }
  const Window dom = detail::scan_domain(g, grid);
  d.residual_sup = detail::grid_max(
      [&](double x) {
        return std::abs(g(x) - d.fitted_S * std::sin(w * x) - d.fitted_C * std::cos(w * x));
      },
      dom.lo, dom.hi, detail::clamp_step(h, dom.length()));
  return d;
}

/// sup|f| <= (sigma+tau) A_{sigma+tau}(Q)^{-1/2} sup|Q f|.
inline Certificate check_main(const ExpTypeFn& Q, const ExpTypeFn& f, double sigma, double tau,
                              const GridSpec& grid = {}) {
  if (!(sigma > 0.0) || !(tau >= 0.0))
    throw HypothesisError("sigma > 0 and tau >= 0", "got sigma=" + std::to_string(sigma) +
                                                        ", tau=" + std::to_string(tau));
  if (!Q.real_valued()) throw HypothesisError("Q real-valued", "Q is not real-valued");
  const double slack = 1e-12;
  if (Q.type_bound() > tau * (1.0 + slack) + slack)
    throw HypothesisError("type of Q <= tau", "type bound " + std::to_string(Q.type_bound()));
  if (f.type_bound() > sigma * (1.0 + slack) + slack)
    throw HypothesisError("type of f <= sigma", "type bound " + std::to_string(f.type_bound()));

  Certificate c;
  c.inequality_id = InequalityId::MAIN;
  if (Q.is_constant() && Q(0.0) == 0.0)
    throw HypothesisError("A_{sigma+tau}(Q) > 0", "Q vanishes identically");
  c.zero_separation = real_zeros(Q, std::nullopt, grid).separation;

  const Enclosure A = inf_quadratic(Q, sigma + tau, grid);
  c.a_enclosure = A;
  if (!(A.lo > 0.0)) {
    throw HypothesisError("A_{sigma+tau}(Q) > 0", "enclosure [" + std::to_string(A.lo) + ", " +
                                                      std::to_string(A.hi) + "] contains 0");
  }
  c.constant = (sigma + tau) / std::sqrt(A.lo);
  c.lhs = sup_norm(f, grid);
  c.rhs_norm = sup_norm(multiply(Q, f), grid);
  c.rhs_unbounded_suspected = c.rhs_norm.unbounded_suspected;
  detail::settle(c);
  if (c.verdict == Verdict::EQUALITY_WITHIN_TOL && f.real_valued()) {
    c.equality_diag = diagnose_equality(Q, f, sigma, tau, c.lhs.witness, grid);
  }
  return c;
}

namespace detail {

inline Certificate with_closed_form(Certificate c, InequalityId id, double closed) {
  if (std::abs(c.constant - closed) > 1e-9 * closed) {
    throw InternalConsistencyError("closed-form constant " + std::to_string(closed) +
                                   " disagrees with (sigma+tau)/sqrt(A) = " +
                                   std::to_string(c.constant));
  }
  c.inequality_id = id;
  c.constant = closed;
  const auto diag = c.equality_diag;
  settle(c);
  c.equality_diag = diag;
  return c;
}

}  // namespace detail

/// sup|f| <= (sigma/tau + 1) sup|sin(tau t) f(t)|.
inline Certificate check_cor_sin(const ExpTypeFn& f, double sigma, double tau, const GridSpec& grid = {}) {
  if (!(tau > 0.0)) throw HypothesisError("tau > 0", "got tau=" + std::to_string(tau));
  auto c = check_main(sine(tau), f, sigma, tau, grid);
  return detail::with_closed_form(std::move(c), InequalityId::COR_SIN, sigma / tau + 1.0);
}

/// sup|f| <= sigma sup|t f(t)|.
inline Certificate check_cor_x(const ExpTypeFn& f, double sigma, const GridSpec& grid = {}) {
  auto c = check_main(poly({0.0, 1.0}), f, sigma, 0.0, grid);
  return detail::with_closed_form(std::move(c), InequalityId::COR_X, sigma);
}

/// Pointwise g'(x)^2 + gamma^2 g(x)^2 <= gamma^2 ||g||^2 on the scan grid.
/// lhs holds max_x of the left side, rhs_norm the enclosure of ||g||^2, and
/// margin the smallest pointwise gap.
inline Certificate check_duffin_schaeffer(const ExpTypeFn& g, double gamma, const GridSpec& grid = {}) {
  if (!g.real_valued()) throw HypothesisError("g real-valued", "g is not real-valued");
  if (g.type_bound() > gamma * (1.0 + 1e-12) + 1e-12)
    throw HypothesisError("type of g <= gamma", "type bound " + std::to_string(g.type_bound()));
  const Enclosure n = sup_norm(g, grid);
  if (!n.certified) throw HypothesisError("sup norm of g certified", "g is neither periodic nor decaying");

  Certificate c;
  c.inequality_id = InequalityId::DUFFIN_SCHAEFFER;
  c.constant = gamma * gamma;
  c.rhs_norm = Enclosure{n.lo * n.lo, n.hi * n.hi, n.witness, n.certified, false, false};
  const double bound = c.constant * c.rhs_norm.hi;
  const double tol = 1e-9 * std::max(bound, 1e-300);

  const ExpTypeFn dg = derivative(g);
  const Window dom = detail::scan_domain(g, grid);
  const double h = detail::clamp_step(grid.step > 0.0 ? grid.step : default_step(gamma), dom.length());
  const std::size_t N = static_cast<std::size_t>(std::ceil(dom.length() / h));
  double worst_gap = std::numeric_limits<double>::infinity();
  double max_lhs = -1.0, arg = dom.lo;
  bool everywhere = true;
  for (std::size_t i = 0; i <= N; ++i) {
    const double x = i == N ? dom.hi : dom.lo + dom.length() * static_cast<double>(i) / static_cast<double>(N);
    const double d = dg(x), v = g(x);
    const double lhs = d * d + gamma * gamma * v * v;
    const double gap = bound - lhs;
    if (lhs > max_lhs) {
      max_lhs = lhs;
      arg = x;
    }
    worst_gap = std::min(worst_gap, gap);
    everywhere = everywhere && std::abs(gap) <= tol;
  }
  c.lhs = Enclosure{max_lhs, max_lhs, arg, false, false, false};
  c.margin = worst_gap;
  c.equality_everywhere = everywhere;
  if (worst_gap < -tol) {
    c.verdict = Verdict::VIOLATION_SUSPECTED;
  } else if (everywhere) {
    c.verdict = Verdict::EQUALITY_WITHIN_TOL;
  } else {
    c.verdict = Verdict::HOLDS_CERTIFIED;
  }
  return c;
}

enum class SchurKind {
  RieszSchur,     // weight sqrt(1 - t^2) on [-1, 1]
  Trigonometric,  // weight sin t on [-pi, pi)
  Polynomial,     // weight t on [-1, 1]
};

/// Chebyshev coefficients c_k with P(t) = sum c_k T_k(t).
inline std::vector<double> chebyshev_coefficients(std::vector<double> monomial) {
  const std::size_t n = monomial.size();
  std::vector<std::vector<double>> T(n);
  for (std::size_t k = 0; k < n; ++k) {
    T[k].assign(n, 0.0);
    if (k == 0) {
      T[0][0] = 1.0;
    } else if (k == 1) {
      T[1][1] = 1.0;
    } else {
      for (std::size_t i = 0; i + 1 < n; ++i) T[k][i + 1] += 2.0 * T[k - 1][i];
      for (std::size_t i = 0; i < n; ++i) T[k][i] -= T[k - 2][i];
    }
  }
  std::vector<double> c(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    c[k] = monomial[k] / T[k][k];
    for (std::size_t i = 0; i <= k; ++i) monomial[i] -= c[k] * T[k][i];
  }
  return c;
}

/// P(cos theta) as a cosine polynomial.
inline ExpTypeFn cosine_substitution(const std::vector<double>& monomial) {
  const auto c = chebyshev_coefficients(monomial);
  ExpTypeFn f = constant(c.empty() ? 0.0 : c[0]);
  for (std::size_t k = 1; k < c.size(); ++k) f = add(f, scale(c[k], cosine(static_cast<double>(k))));
  return f;
}

/// Classical inequalities on compact domains. Algebraic P is mapped to
/// P(cos theta), so every norm is a certified periodic sup over one period.
inline Certificate check_classic_schur(SchurKind kind, const ExpTypeFn& p, int n, const GridSpec& grid = {}) {
  if (n < 0) throw std::invalid_argument("check_classic_schur: negative degree");
  Certificate c;
  c.constant = n + 1.0;
  ExpTypeFn lhs_fn, rhs_fn;
  if (kind == SchurKind::Trigonometric) {
    if (p.type_bound() > n + 1e-12 || (!p.period() && !p.is_constant()))
      throw std::invalid_argument("check_classic_schur: T must be a trigonometric polynomial of degree <= n");
    c.inequality_id = InequalityId::RS_TRIG;
    lhs_fn = p;
    rhs_fn = multiply(sine(1.0), p);
  } else {
    auto coeffs = as_polynomial(p);
    if (!coeffs) throw std::invalid_argument("check_classic_schur: P must be a polynomial");
    if (static_cast<int>(coeffs->size()) - 1 > n)
      throw std::invalid_argument("check_classic_schur: degree of P exceeds n");
    lhs_fn = cosine_substitution(*coeffs);
    if (kind == SchurKind::RieszSchur) {
      c.inequality_id = InequalityId::RS_CLASSIC;
      rhs_fn = multiply(sine(1.0), lhs_fn);
    } else {
      c.inequality_id = InequalityId::SCHUR_POLY;
      rhs_fn = multiply(cosine(1.0), lhs_fn);
    }
  }
  c.lhs = sup_norm(lhs_fn, grid);
  c.rhs_norm = sup_norm(rhs_fn, grid);
  detail::settle(c);
  if (kind == SchurKind::Polynomial && n % 2 == 1) {
    c.refined_constant = static_cast<double>(n);
    c.refined_margin = n * c.rhs_norm.lo - c.lhs.hi;
  }
  return c;
}

/// Coefficient form: monomial coefficients for the algebraic kinds,
/// [a0, a1, b1, ..., an, bn] (cos/sin pairs) for the trigonometric kind.
inline Certificate check_classic_schur(SchurKind kind, const std::vector<double>& coeffs, int n,
                                       const GridSpec& grid = {}) {
  if (kind != SchurKind::Trigonometric) return check_classic_schur(kind, from_polynomial(coeffs), n, grid);
  ExpTypeFn t = constant(coeffs.empty() ? 0.0 : coeffs[0]);
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    const double k = static_cast<double>((i + 1) / 2);
    t = add(t, scale(coeffs[i], i % 2 ? cosine(k) : sine(k)));
  }
  return check_classic_schur(kind, t, n, grid);
}

}  // namespace rsineq
