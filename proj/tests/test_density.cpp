// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rsineq/density.hpp"
#include "rsineq/suite.hpp"

using namespace rsineq;

TEST(Sublevel, HalfLevelOfSine) {
  const auto s = sublevel_set(sine(1.0), 0.5, {-oracle::pi, oracle::pi});
  // |sin x| < 1/2 iff dist(x, pi Z) < pi/6
  const double r = oracle::pi / 6.0;
  ASSERT_EQ(s.set.size(), 3u);
  EXPECT_NEAR(s.set.intervals()[0].lo, -oracle::pi, 1e-15);
  EXPECT_NEAR(s.set.intervals()[0].hi, -oracle::pi + r, 1e-12);
  EXPECT_NEAR(s.set.intervals()[1].lo, -r, 1e-12);
  EXPECT_NEAR(s.set.intervals()[1].hi, r, 1e-12);
  EXPECT_NEAR(s.set.intervals()[2].lo, oracle::pi - r, 1e-12);
  EXPECT_NEAR(s.set.measure(), 4.0 * r, 1e-11);
  ASSERT_EQ(s.components.size(), 3u);
  EXPECT_FALSE(s.components[0].bounded);
  EXPECT_TRUE(s.components[1].bounded);
  for (const auto& c : s.components) EXPECT_EQ(c.zeros.size(), 1u);
  EXPECT_FALSE(s.tangency);
}

TEST(Sublevel, Examples) {
  const Window w{-10.0, 10.0};
  EXPECT_EQ(sublevel_set(sine(1.0), 1.0 + 1e-9, w).set, IntervalSet::full(w));
  const auto x = sublevel_set(poly({0.0, 1.0}), 0.1, w);
  ASSERT_EQ(x.set.size(), 1u);
  EXPECT_NEAR(x.set.intervals()[0].lo, -0.1, 1e-14);
  EXPECT_NEAR(x.set.intervals()[0].hi, 0.1, 1e-14);
  EXPECT_THROW(sublevel_set(sine(1.0), 0.0, w), std::invalid_argument);
}

TEST(Sublevel, TouchingLevelIsFlagged) {
  // 1.5 + cos x touches the level 0.5 at pi without crossing it.
  const auto s = sublevel_set(sum({constant(1.5), cosine(1.0)}), 0.5, {0.0, 2.0 * oracle::pi});
  EXPECT_TRUE(s.tangency);
  EXPECT_TRUE(s.set.contains(oracle::pi));
}

TEST(Sublevel, MembershipMatchesPointwiseTest) {
  Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    const auto Q = random_trig_poly(rng, 1.5, 3);
    const double alpha = 0.3;
    const Window w{-20.0, 20.0};
    const auto s = sublevel_set(Q, alpha, w);
    int mismatches = 0;
    for (int k = 0; k <= 20000; ++k) {
      const double x = w.lo + w.length() * k / 20000.0;
      const double v = std::abs(Q(x));
      if (std::abs(v - alpha) < 1e-9) continue;
      if (s.set.contains(x) != (v < alpha)) ++mismatches;
    }
    EXPECT_EQ(mismatches, 0) << print(Q);
  }
}

TEST(AlphaStar, SineClosedForm) {
  const double d = oracle::pi;
  const auto a = alpha_star(sine(1.0), 3.0, d);
  EXPECT_NEAR(a.C2, 1.0, 1e-12);
  const double closed = oracle::pi / std::sqrt(64.0 + 9.0 * oracle::pi * oracle::pi);
  EXPECT_NEAR(a.alpha2, closed, 1e-12);
  EXPECT_NEAR(a.alpha2 / std::sqrt(a.C2 * a.C2 - a.alpha2 * a.alpha2 * 9.0), d / 8.0, 1e-12);
  EXPECT_LE(a.alpha_star, a.alpha1);
  EXPECT_LE(a.alpha_star, a.alpha2);
  EXPECT_FALSE(a.window_limited);
  const auto rep = ld_dense_check(a.E_star, d / 2.0, d / 4.0);
  EXPECT_TRUE(rep.is_dense) << rep.worst_measure;
  EXPECT_THROW(alpha_star(product({sine(1.0), sine(1.0)}), 2.0, 1.0), HypothesisError);
}

TEST(AlphaStar, DefiningEquationHoldsForManyInputs) {
  for (double C : {0.5, 1.0, 3.0}) {
    for (double s : {0.5, 2.0, 7.0}) {
      for (double d : {0.3, 1.0, 4.0}) {
        const double a2 = d * C / std::sqrt(64.0 + d * d * s * s);
        EXPECT_NEAR(a2 / std::sqrt(C * C - a2 * a2 * s * s), d / 8.0, 1e-12 * (1.0 + d));
      }
    }
  }
  // and through the library, where C2 comes from A_s(Q)
  for (double s : {1.5, 2.0, 4.0}) {
    const auto a = alpha_star(sum({sine(1.0), scaled(0.3, sine(2.0))}), s, 1.0);
    EXPECT_NEAR(a.alpha2 / std::sqrt(a.C2 * a.C2 - a.alpha2 * a.alpha2 * s * s), 1.0 / 8.0, 1e-12);
  }
}

TEST(AlphaStar, CatalogueReproduction) {
  for (const auto& [name, Q] : suite::weight_catalogue()) {
    const double tau = Q.type_bound();
    const double s = 1.0 + tau;
    if (!(inf_quadratic(Q, s).lo > 0.0)) continue;
    const auto z = real_zeros(Q);
    const double d = z.separation;
    const auto a = alpha_star(Q, s, d);
    const auto rep = ld_dense_check(a.E_star, d / 2.0, d / 4.0);
    EXPECT_TRUE(rep.is_dense) << name << " worst " << rep.worst_measure << " vs " << d / 4.0;

    // every component of a lower sublevel set traps exactly one zero
    for (double frac : {1.0, 0.5, 0.1}) {
      const auto sub = sublevel_set(Q, frac * a.alpha_star, a.window);
      for (const auto& c : sub.components) {
        EXPECT_EQ(c.zeros.size(), 1u) << name << " at " << c.span.lo;
        for (double r : c.zeros) EXPECT_TRUE(c.span.lo <= r && r <= c.span.hi);
      }
    }

    // C2^2 bounds Q'^2 + s^2 Q^2 from below on a dense grid
    const auto dQ = derivative(Q);
    const double m = oracle::min_on_grid(
        [&](double x) { return dQ(x) * dQ(x) + s * s * Q(x) * Q(x); }, a.window.lo, a.window.hi, 100001);
    EXPECT_GE(m, a.C2 * a.C2 * (1.0 - 1e-9)) << name;
  }
}

TEST(Chain, RandomFamily) {
  const auto r = schur_constant_chain(sine(1.0), 2.0, 1.0, 100, 7);
  ASSERT_EQ(r.ratios.size(), 100u);
  for (double q : r.ratios) {
    EXPECT_TRUE(std::isfinite(q));
    EXPECT_GE(q, 1.0);
  }
  EXPECT_GE(r.C1_est, 1.0);
  EXPECT_NEAR(r.C3_est, r.C1_est / r.alpha_star, 1e-12 * r.C3_est);
  EXPECT_EQ(r.violations, 0);
  EXPECT_EQ(r.checked, 100u);
}

TEST(Chain, FullSetGivesOne) {
  // A constant weight has no zeros, so E* is the whole window.
  const auto r = schur_constant_chain(constant(3.0), 1.0, 0.0, 10, 1);
  EXPECT_DOUBLE_EQ(r.C1_est, 1.0);
}

TEST(Chain, PeakBetweenZerosRaisesTheRatio) {
  // A function concentrated near a zero of sin x lives mostly inside E_alpha.
  const auto spike = mollify(sin_over_x(2.0, 0, 0.0), 0.25, 0.0);
  const auto flat = cosine(0.1);
  const auto r = schur_constant_chain(sine(1.0), 2.25, 1.0, {spike, flat});
  ASSERT_EQ(r.ratios.size(), 2u);
  EXPECT_GT(r.ratios[0], r.ratios[1]);
  EXPECT_DOUBLE_EQ(r.C1_est, r.ratios[0]);
}
