// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rsineq/parse.hpp"
#include "trees.hpp"

using namespace rsineq;

TEST(Parse, QuotientOfSinesBecomesSinRatio) {
  const auto p = parse("sin(2*x)/sin(x)");
  EXPECT_EQ(p.root.kind(), NodeKind::SinRatio);
  EXPECT_DOUBLE_EQ(p.root.type_bound(), 1.0);
  for (double x : {-1.0, 0.0, oracle::pi, 2.0}) EXPECT_NEAR(p.root(x), 2.0 * std::cos(x), 1e-15);
}

TEST(Parse, VariableIsALinearPolynomial) {
  const auto f = parse_expr("x");
  EXPECT_EQ(f.kind(), NodeKind::Poly);
  EXPECT_DOUBLE_EQ(f.type_bound(), 0.0);
  EXPECT_DOUBLE_EQ(f(3.5), 3.5);
}

TEST(Parse, RejectsQuotientWithPoles) {
  try {
    parse("sin(3*x)/sin(2*x)");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 8u);
    EXPECT_NE(std::string(e.what()).find("non-entire"), std::string::npos);
  }
  // The quotient really is singular: near pi/2 it blows up.
  EXPECT_GT(std::abs(std::sin(3 * (oracle::pi / 2 + 1e-9)) / std::sin(2 * (oracle::pi / 2 + 1e-9))), 1e8);
  EXPECT_THROW(parse("sinratio(3,2)"), ParseError);
  EXPECT_THROW(parse("cos(x)/x"), ParseError);
  EXPECT_THROW(parse("1/x"), ParseError);
}

TEST(Parse, SyntaxErrorsCarryPositions) {
  struct Case {
    const char* src;
    std::size_t pos;
  };
  for (const auto& c : {Case{"sin(x", 5}, Case{"2*", 2}, Case{"foo", 0}, Case{"sin(x*x)", 4}, Case{"1)", 1},
                        Case{"3/0", 1}, Case{"", 0}}) {
    try {
      parse(c.src);
      ADD_FAILURE() << c.src;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.position(), c.pos) << c.src << ": " << e.what();
    }
  }
}

TEST(Parse, GrammarForms) {
  EXPECT_NEAR(parse_expr("sin(2*x+pi/2)")(0.3), std::cos(0.6), 1e-15);
  EXPECT_NEAR(parse_expr("-cos(x) - 2")(0.0), -3.0, 1e-15);
  EXPECT_NEAR(parse_expr("sin(2*x)/x")(0.0), 2.0, 1e-15);
  EXPECT_NEAR(parse_expr("sinoverx(2)")(1.0), std::sin(2.0), 1e-15);
  EXPECT_NEAR(parse_expr("sinratio(3,1)")(0.0), 3.0, 1e-15);
  EXPECT_NEAR(parse_expr("(x*x - 1)/2")(3.0), 4.0, 1e-15);
  EXPECT_NEAR(parse_expr("x*sin(x)/x")(0.7), std::sin(0.7), 1e-15);
  EXPECT_DOUBLE_EQ(parse_expr("sin(x)*cos(2*x)").type_bound(), 3.0);
  EXPECT_DOUBLE_EQ(parse_expr("sin(x)+cos(2*x)").type_bound(), 2.0);
}

TEST(Parse, FreeParameters) {
  const auto p = parse("sin(sigma*x)/x", {{"sigma", 2.0}, {"unused", 1.0}});
  EXPECT_DOUBLE_EQ(p.root(0.0), 2.0);
  ASSERT_EQ(p.free_parameters.size(), 1u);
  EXPECT_DOUBLE_EQ(p.free_parameters.at("sigma"), 2.0);
  EXPECT_THROW(parse("sin(sigma*x)"), ParseError);
}

// Evaluates f with every sum replaced by a sum of absolute values: the natural
// scale for rounding in f(x), where cancellation can make |f(x)| arbitrarily small.
double magnitude(const ExpTypeFn& f, double x) {
  switch (f.kind()) {
    case NodeKind::Sum: {
      double s = 0.0;
      for (const auto& c : f.children()) s += magnitude(c, x);
      return s;
    }
    case NodeKind::Product: {
      double s = 1.0;
      for (const auto& c : f.children()) s *= magnitude(c, x);
      return s;
    }
    case NodeKind::Scale:
      return std::abs(f.value()) * magnitude(f.children().front(), x);
    case NodeKind::Poly: {
      double s = 0.0, p = 1.0;
      for (double c : f.coeffs()) {
        s += std::abs(c) * p;
        p *= std::abs(x);
      }
      return s;
    }
    default:
      return std::abs(f(x));
  }
}

TEST(Parse, PrintRoundTrip) {
  trees::Gen gen(17);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ux(-20.0, 20.0);
  for (int i = 0; i < 60; ++i) {
    const auto f = gen.tree(3);
    const std::string text = print(f);
    const auto g = parse_expr(text);
    EXPECT_DOUBLE_EQ(g.type_bound(), f.type_bound()) << text;
    for (int k = 0; k < 1000; ++k) {
      const double x = ux(rng);
      const double a = f(x), b = g(x);
      EXPECT_LE(std::abs(a - b), 1e-15 * std::max(1.0, magnitude(f, x))) << text << " at " << x;
    }
  }
}
