// SPDX-License-Identifier: Apache-2.0
//
// The reproduction battery: one check per published claim, all seeded.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rsineq/certificates.hpp"
#include "rsineq/density.hpp"
#include "rsineq/families.hpp"
#include "rsineq/report.hpp"
#include "rsineq/sharpness.hpp"

namespace rsineq::suite {

inline bool holds(Verdict v) { return v == Verdict::HOLDS_CERTIFIED || v == Verdict::EQUALITY_WITHIN_TOL; }

/// Extremal of the x-weighted bound: sin(2x)/x against sigma = 2.
inline CheckResult x_weight_sharpness() {
  CheckResult r{1, "x-weight sharpness, f = sin(2x)/x, sigma = 2", false, ""};
  const ExpTypeFn f = sin_over_x(2.0);
  const auto c = check_cor_x(f, 2.0);
  const double f0 = std::abs(f(0.0));
  const double lo = f0 / (2.0 * c.rhs_norm.hi), hi = f0 / (2.0 * c.rhs_norm.lo);
  r.passed = std::abs(lo - 1.0) <= 1e-6 && std::abs(hi - 1.0) <= 1e-6 && c.verdict == Verdict::EQUALITY_WITHIN_TOL;
  r.detail = "ratio in [" + fmt(lo) + ", " + fmt(hi) + "], verdict " + to_string(c.verdict);
  return r;
}

/// Extremal of the sine-weighted bound: sin(3x)/sin(x), sigma = 2, tau = 1.
inline CheckResult sine_weight_sharpness() {
  CheckResult r{2, "sine-weight sharpness, f = sin(3x)/sin(x), sigma = 2, tau = 1", false, ""};
  const auto c = check_cor_sin(sin_ratio(3.0, 1.0), 2.0, 1.0);
  const double ratio = c.lhs.lo / (c.constant * c.rhs_norm.hi);
  const double ratio_hi = c.lhs.hi / (c.constant * c.rhs_norm.lo);
  bool ok = std::abs(ratio - 1.0) <= 1e-6 && std::abs(ratio_hi - 1.0) <= 1e-6;
  r.detail = "ratio in [" + fmt(ratio) + ", " + fmt(ratio_hi) + "]";
  if (c.equality_diag) {
    const auto& d = *c.equality_diag;
    ok = ok && !d.fit_failed && std::abs(d.fitted_S - 1.0) <= 1e-6 && std::abs(d.fitted_C) <= 1e-6 &&
         d.residual_sup <= 1e-6;
    r.detail += ", S=" + fmt(d.fitted_S) + ", C=" + fmt(d.fitted_C) + ", residual " + fmt(d.residual_sup);
  } else {
    ok = false;
    r.detail += ", no equality diagnosis";
  }
  r.passed = ok;
  return r;
}

inline CheckResult a_s_closed_forms() {
  CheckResult r{3, "A_s closed forms for sin(tau x) and x", true, ""};
  double worst_sin = 0.0, worst_x = 0.0;
  for (double tau : {1.0, 2.0}) {
    for (double k : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      const double s = k * tau;
      const double err = std::abs(inf_quadratic(sine(tau), s).lo - std::min(tau * tau, s * s));
      worst_sin = std::max(worst_sin, err);
    }
  }
  for (double s : {1.0, 5.0, 10.0}) {
    const auto e = inf_quadratic(poly({0.0, 1.0}), s);
    worst_x = std::max({worst_x, std::abs(e.lo - 1.0), std::abs(e.hi - 1.0)});
  }
  r.passed = worst_sin <= 1e-8 && worst_x <= 1e-10;
  r.detail = "max error sin " + fmt(worst_sin) + ", x " + fmt(worst_x);
  return r;
}

/// Weights used for the monotonicity check.
inline std::vector<std::pair<std::string, ExpTypeFn>> weight_catalogue() {
  return {
      {"sin(x)", sine(1.0)},
      {"sin(2x)", sine(2.0)},
      {"cos(x)", cosine(1.0)},
      {"x", poly({0.0, 1.0})},
      {"2x+1", poly({1.0, 2.0})},
      {"sin(x)+0.5sin(2x)", add(sine(1.0), scale(0.5, sine(2.0)))},
      {"sin(3x)/sin(x)", sin_ratio(3.0, 1.0)},
      {"cos(3x)+cos(x)", add(cosine(3.0), cosine(1.0))},
      {"x^2-1", poly({-1.0, 0.0, 1.0})},
      {"3", constant(3.0)},
  };
}

inline CheckResult a_s_monotone() {
  CheckResult r{4, "A_s(Q) nondecreasing in s for 10 weights", true, ""};
  std::vector<double> s(100);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = 0.1 * static_cast<double>(i);
  double worst = 0.0;
  std::string where;
  for (const auto& [name, Q] : weight_catalogue()) {
    std::vector<Enclosure> prof;
    try {
      prof = a_s_profile(Q, s);
    } catch (const InternalConsistencyError& e) {
      r.passed = false;
      where = name + ": " + e.what();
      continue;
    }
    for (std::size_t i = 1; i < prof.size(); ++i) {
      const double drop = prof[i - 1].lo - prof[i].lo;
      if (drop > worst) {
        worst = drop;
        where = name;
      }
      if (drop > 1e-9) r.passed = false;
    }
  }
  r.detail = "largest step decrease " + fmt(worst) + (where.empty() ? "" : " (" + where + ")");
  return r;
}

inline CheckResult duffin_schaeffer(std::uint64_t seed) {
  CheckResult r{5, "pointwise Duffin-Schaeffer bound, 50 random trigonometric polynomials", true, ""};
  Rng rng(seed ^ 0x5d5ULL);
  std::uniform_real_distribution<double> gam(0.5, 4.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 50; ++i) {
    const double g = std::round(gam(rng) * 4.0) / 4.0;
    const auto c = check_duffin_schaeffer(random_trig_poly(rng, g, 1 + i % 4), g);
    worst = std::min(worst, c.margin);
    if (c.margin < -1e-9) r.passed = false;
  }
  const auto eq = check_duffin_schaeffer(sine(3.0), 3.0);
  const bool flag = eq.equality_everywhere.value_or(false);
  r.passed = r.passed && flag;
  r.detail = "min margin " + fmt(worst) + ", equality everywhere for sin(3x): " + (flag ? "yes" : "no");
  return r;
}

inline CheckResult main_fuzz(std::uint64_t seed) {
  CheckResult r{6, "main inequality on 100 random pairs", true, ""};
  Rng rng(seed ^ 0x6a6ULL);
  std::uniform_int_distribution<int> quarter(2, 12);
  int certified = 0, equality = 0, other = 0;
  std::string first_bad;
  for (int i = 0; i < 100; ++i) {
    const double sigma = quarter(rng) / 4.0;
    Certificate c;
    if (i % 2 == 0) {
      const double tau = quarter(rng) / 4.0;
      c = check_main(sine(tau), random_trig_poly(rng, sigma, 3), sigma, tau);
    } else {
      c = check_main(poly({0.0, 1.0}), random_sinc_sum(rng, sigma, 3), sigma, 0.0);
    }
    if (c.verdict == Verdict::HOLDS_CERTIFIED) {
      ++certified;
    } else if (c.verdict == Verdict::EQUALITY_WITHIN_TOL) {
      ++equality;
    } else {
      ++other;
      r.passed = false;
      if (first_bad.empty()) first_bad = ", first failure #" + std::to_string(i) + " " + to_string(c.verdict);
    }
  }
  r.detail = std::to_string(certified) + " certified, " + std::to_string(equality) + " equality, " +
             std::to_string(other) + " other" + first_bad;
  return r;
}

inline CheckResult classic_trio(std::uint64_t seed) {
  CheckResult r{7, "classical trigonometric, Schur and Riesz-Schur inequalities", true, ""};
  double worst_eq = 0.0;
  for (int n : {1, 2, 3, 5}) {
    const auto c = check_classic_schur(SchurKind::Trigonometric, sin_ratio(n + 1.0, 1.0), n);
    const double ratio = c.lhs.lo / (c.constant * c.rhs_norm.hi);
    worst_eq = std::max(worst_eq, std::abs(ratio - 1.0));
  }
  if (worst_eq > 1e-8) r.passed = false;
  Rng rng(seed ^ 0x7a7ULL);
  int fails_poly = 0, fails_refined = 0, fails_rs = 0;
  double min_refined = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k < 50; ++k) {
      const auto p = random_poly_coeffs(rng, n);
      const auto s = check_classic_schur(SchurKind::Polynomial, p, n);
      if (!holds(s.verdict)) ++fails_poly;
      if (n % 2 == 1) {
        const double tol = kEqualityRelTol * n * s.rhs_norm.lo;
        min_refined = std::min(min_refined, *s.refined_margin);
        if (*s.refined_margin < -tol) ++fails_refined;
      }
      if (!holds(check_classic_schur(SchurKind::RieszSchur, p, n).verdict)) ++fails_rs;
    }
  }
  r.passed = r.passed && fails_poly == 0 && fails_refined == 0 && fails_rs == 0;
  r.detail = "equality error " + fmt(worst_eq) + "; failures: t-weight " + std::to_string(fails_poly) +
             ", refined odd " + std::to_string(fails_refined) + " (min margin " + fmt(min_refined) +
             "), sqrt(1-t^2)-weight " + std::to_string(fails_rs);
  return r;
}

inline CheckResult density_reproduction() {
  CheckResult r{8, "alpha* and (d/2, d/4)-density of E* for sin(x), s = 3", false, ""};
  const ExpTypeFn Q = sine(1.0);
  const double d = real_zeros(Q).separation;
  const auto a = alpha_star(Q, 3.0, d);
  const double pi = detail::kPi;
  const double closed = pi / std::sqrt(64.0 + 9.0 * pi * pi);
  const auto rep = ld_dense_check(a.E_star, d / 2.0, d / 4.0);
  const double err = std::abs(a.alpha2 - closed);
  r.passed = std::abs(d - pi) <= 1e-12 && err <= 1e-12 && rep.is_dense;
  r.detail = "d=" + fmt(d) + ", alpha2 error " + fmt(err) + ", alpha*=" + fmt(a.alpha_star) +
             ", worst measure " + fmt(rep.worst_measure) + " vs " + fmt(d / 4.0);
  return r;
}

inline CheckResult sharpness(std::uint64_t seed) {
  CheckResult r{9, "sharpness search, Q = sin(x), sigma = 2, tau = 1, 4 basis frequencies", false, ""};
  const auto s = sharpness_search(sine(1.0), 2.0, 1.0, 4, 2000, seed);
  r.passed = s.best_ratio >= 2.9 && s.best_ratio <= 3.0 * (1.0 + 1e-6);
  r.detail = "best ratio " + fmt(s.best_ratio) + " (constant " + fmt(s.constant) + ")";
  return r;
}

inline CheckResult mollifier(std::uint64_t seed) {
  CheckResult r{10, "mollifier interpolates at x_eps and never exceeds |f|", true, ""};
  Rng rng(seed ^ 0xa0aULL);
  std::uniform_real_distribution<double> ud(0.1, 1.0), ux(-5.0, 5.0), ug(0.5, 3.0);
  double worst_interp = 0.0, worst_excess = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ExpTypeFn f = random_trig_poly(rng, ug(rng), 1 + i % 4);
    const double delta = ud(rng), xe = ux(rng);
    const ExpTypeFn F = mollify(f, delta, xe);
    worst_interp = std::max(worst_interp, std::abs(F(xe) - f(xe)));
    for (int k = 0; k < 10000; ++k) {
      const double x = -50.0 + 100.0 * k / 9999.0;
      worst_excess = std::max(worst_excess, std::abs(F(x)) - std::abs(f(x)));
    }
  }
  r.passed = worst_interp <= 1e-12 && worst_excess <= 0.0;
  r.detail = "interpolation error " + fmt(worst_interp) + ", max(|F|-|f|) " + fmt(worst_excess);
  return r;
}

/// All reproducible checks in order. Runtime limits are asserted by the caller.
inline std::vector<CheckResult> run_battery(std::uint64_t seed) {
  std::vector<std::function<CheckResult()>> jobs = {
      [] { return x_weight_sharpness(); },  [] { return sine_weight_sharpness(); },
      [] { return a_s_closed_forms(); },    [] { return a_s_monotone(); },
      [=] { return duffin_schaeffer(seed); }, [=] { return main_fuzz(seed); },
      [=] { return classic_trio(seed); },     [] { return density_reproduction(); },
      [=] { return sharpness(seed); },        [=] { return mollifier(seed); },
  };
  std::vector<CheckResult> out;
  for (auto& j : jobs) {
    try {
      out.push_back(j());
    } catch (const std::exception& e) {
      out.push_back({static_cast<int>(out.size()) + 1, "exception", false, e.what()});
    }
  }
  return out;
}

}  // namespace rsineq::suite
