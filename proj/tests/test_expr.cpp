// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rsineq/expr.hpp"
#include "trees.hpp"

using namespace rsineq;

TEST(Eval, RemovableSingularitiesAtTheOrigin) {
  EXPECT_DOUBLE_EQ(sin_over_x(2.0)(0.0), 2.0);
  EXPECT_DOUBLE_EQ(sin_ratio(3.0, 1.0)(0.0), 3.0);
  EXPECT_DOUBLE_EQ(sine(1.0)(oracle::pi / 2.0), 1.0);
}

TEST(Eval, SinRatioMatchesCosineSum) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int n = 1; n <= 6; ++n) {
    for (double b : {0.5, 1.0, 2.5}) {
      const auto f = sin_ratio(n * b, b);
      for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        EXPECT_NEAR(f(x), oracle::dirichlet(n, b * x), 1e-12 * n);
      }
      // close to the zeros of sin(b x), where the direct quotient cancels
      for (int k = -3; k <= 3; ++k) {
        for (double off : {0.0, 1e-9, -3e-6, 5e-5, 2e-4}) {
          const double x = k * oracle::pi / b + off;
          EXPECT_NEAR(f(x), oracle::dirichlet(n, b * x), 1e-11 * n) << n << " " << b << " " << x;
        }
      }
    }
  }
}

TEST(Eval, SinOverXDerivativesMatchFiniteDifferences) {
  for (double a : {0.5, 2.0}) {
    for (int k = 0; k < 3; ++k) {
      const auto g = sin_over_x(a, k, 0.7);
      const auto g1 = sin_over_x(a, k + 1, 0.7);
      for (double x : {-3.0, 0.0, 0.7, 0.70001, 2.5, 40.0}) {
        const double fd = oracle::central_difference(g, x, 1e-4);
        EXPECT_NEAR(g1(x), fd, 1e-6 * (1.0 + std::abs(fd))) << a << " " << k << " " << x;
      }
    }
  }
}

TEST(Eval, ContinuityAtDenominatorZeros) {
  for (int n = 2; n <= 5; ++n) {
    const auto f = sin_ratio(2.0 * n, 2.0);
    for (int k = -4; k <= 4; ++k) {
      const double x0 = k * oracle::pi / 2.0;
      const double v = f(x0);
      ASSERT_TRUE(std::isfinite(v));
      for (double e : {1e-7, -1e-7}) EXPECT_LE(std::abs(f(x0 + e) - v), 1e-6 * (1.0 + std::abs(v)));
    }
  }
  for (int k = 0; k < 4; ++k) {
    const auto f = sin_over_x(1.5, k, -0.25);
    const double v = f(-0.25);
    ASSERT_TRUE(std::isfinite(v));
    for (double e : {1e-7, -1e-7}) EXPECT_LE(std::abs(f(-0.25 + e) - v), 1e-6 * (1.0 + std::abs(v)));
  }
}

TEST(SinRatio, RejectsNonIntegerRatios) {
  EXPECT_THROW(sin_ratio(3.0, 2.0), NonEntireError);
  EXPECT_THROW(sin_ratio(1.0, 2.0), NonEntireError);
  EXPECT_THROW(sin_ratio(-2.0, 1.0), NonEntireError);
  EXPECT_NO_THROW(sin_ratio(2.0, 1.0));
}

TEST(SinRatio, CarriesTheSharpType) {
  EXPECT_DOUBLE_EQ(sin_ratio(2.0, 1.0).type_bound(), 1.0);
  EXPECT_DOUBLE_EQ(sin_ratio(3.0, 1.0).type_bound(), 2.0);
  EXPECT_DOUBLE_EQ(sin_ratio(6.0, 2.0).type_bound(), 4.0);
  EXPECT_TRUE(sin_ratio(1.0, 1.0).is_constant());
}

TEST(TypeBound, LeavesAndComposition) {
  EXPECT_DOUBLE_EQ(sine(-3.0).type_bound(), 3.0);
  EXPECT_DOUBLE_EQ(poly({1, 2, 3}).type_bound(), 0.0);
  EXPECT_DOUBLE_EQ(sin_over_x(2.0).type_bound(), 2.0);
  EXPECT_DOUBLE_EQ(scaled(5.0, cosine(1.5)).type_bound(), 1.5);
}

TEST(TypeBound, RandomTreesComposeBySumAndMax) {
  trees::Gen gen(11);
  for (int i = 0; i < 100; ++i) {
    const auto f = gen.tree(2), g = gen.tree(2);
    EXPECT_DOUBLE_EQ(product({f, g}).type_bound(), f.type_bound() + g.type_bound());
    EXPECT_DOUBLE_EQ(sum({f, g}).type_bound(), std::max(f.type_bound(), g.type_bound()));
    EXPECT_DOUBLE_EQ(scaled(-2.0, f).type_bound(), f.type_bound());
  }
}

TEST(Period, HoldsOnRandomPeriodicTrees) {
  trees::Gen gen(5);
  gen.periodic_only = true;
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const auto f = gen.tree(3);
    if (!f.period()) continue;
    ++checked;
    const double P = *f.period();
    for (int k = 0; k <= 200; ++k) {
      const double x = -20.0 + 0.2 * k;
      EXPECT_LE(std::abs(f(x + P) - f(x)), 1e-12 * (1.0 + std::abs(f(x))) * (1.0 + P)) << print(f);
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Period, DecayingTreesHaveNone) {
  EXPECT_FALSE(sin_over_x(1.0).period());
  EXPECT_TRUE(sin_over_x(1.0).decay());
  EXPECT_DOUBLE_EQ(*sine(2.0).period(), oracle::pi);
  EXPECT_DOUBLE_EQ(*sin_ratio(3.0, 1.0).period(), oracle::pi);
  EXPECT_DOUBLE_EQ(*sin_ratio(2.0, 1.0).period(), 2.0 * oracle::pi);
}

TEST(Derivative, ClosedForms) {
  const auto d = derivative(sine(2.5));
  for (double x : {-1.0, 0.0, 0.3, 7.0}) EXPECT_NEAR(d(x), 2.5 * std::cos(2.5 * x), 1e-15);
  const auto one = derivative(poly({0.0, 1.0}));
  EXPECT_TRUE(one.is_constant());
  EXPECT_DOUBLE_EQ(one(123.0), 1.0);
  EXPECT_DOUBLE_EQ(derivative(sine(2.5)).type_bound(), 2.5);
}

TEST(Derivative, SecondOrderAgreementWithCentralDifferences) {
  trees::Gen gen(23);
  const std::vector<double> hs{1e-2, 1e-3, 1e-4, 1e-5};
  int tested = 0;
  for (int i = 0; i < 40; ++i) {
    const auto f = gen.tree(2);
    const auto df = derivative(f);
    EXPECT_DOUBLE_EQ(df.type_bound(), f.type_bound());
    const double x = 0.37 + 0.1 * i;
    std::vector<double> errs;
    for (double h : hs) errs.push_back(std::abs(df(x) - oracle::central_difference(f, x, h)));
    // Orders are only measurable while truncation dominates rounding.
    const double scale = 1.0 + std::abs(f(x)) + std::abs(df(x));
    if (errs.front() < 1e-7 * scale) continue;
    std::vector<double> used_h, used_e;
    for (std::size_t k = 0; k < hs.size(); ++k) {
      if (errs[k] > 1e3 * 2.2e-16 * scale / hs[k]) {
        used_h.push_back(hs[k]);
        used_e.push_back(errs[k]);
      }
    }
    if (used_h.size() < 2) continue;
    ++tested;
    EXPECT_GE(oracle::observed_order(used_h, used_e), 1.9) << print(f) << " at " << x;
  }
  EXPECT_GE(tested, 20);
}

TEST(Mollify, Contract) {
  EXPECT_DOUBLE_EQ(mollify(constant(1.0), 1.0, 0.0)(0.0), 1.0);
  EXPECT_DOUBLE_EQ(mollify(sine(1.0), 0.5, 2.0).type_bound(), 1.5);
  trees::Gen gen(8);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ud(0.05, 2.0), ux(-5.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    const auto f = gen.tree(2);
    const double delta = ud(rng), xe = ux(rng);
    const auto F = mollify(f, delta, xe);
    EXPECT_NEAR(F(xe), f(xe), 1e-12 * (1.0 + std::abs(f(xe))));
    for (int k = 0; k < 10000; ++k) {
      const double x = -50.0 + 100.0 * k / 9999.0;
      EXPECT_LE(std::abs(F(x)), std::abs(f(x))) << x;
    }
  }
}

TEST(RealDecompose, RotationBounds) {
  const auto c = real_decompose(cosine(1.0), sine(1.0));
  const auto G0 = c.rotate(0.0);
  for (double x : {-2.0, 0.0, 1.0}) EXPECT_NEAR(G0(x), std::cos(x), 1e-15);

  trees::Gen gen(4);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ux(-4.0, 4.0);
  for (int i = 0; i < 20; ++i) {
    const auto re = gen.tree(2), im = gen.tree(2);
    const auto z = real_decompose(re, im);
    const double xe = ux(rng);
    const std::complex<double> w = oracle::complex_eval(re, im, xe);
    const auto G = z.rotate(std::arg(w));
    EXPECT_NEAR(G(xe), std::abs(w), 1e-12 * (1.0 + std::abs(w)));
    for (int k = 0; k <= 400; ++k) {
      const double x = -10.0 + 0.05 * k;
      EXPECT_LE(std::abs(G(x)), z.modulus(x) * (1.0 + 1e-15) + 1e-300);
    }
  }
}

TEST(Multiply, AbsorbsXIntoSinOverX) {
  const auto g = multiply(poly({0.0, 1.0}), sin_over_x(2.0));
  EXPECT_EQ(g.kind(), NodeKind::Sin);
  EXPECT_TRUE(g.period());
  const auto h = multiply(poly({0.0, 1.0}), add(sin_over_x(1.0), scale(0.5, sin_over_x(2.0))));
  EXPECT_TRUE(h.period());
  for (double x : {-3.0, 0.5, 9.0}) EXPECT_NEAR(h(x), std::sin(x) + 0.5 * std::sin(2.0 * x), 1e-15);
}
