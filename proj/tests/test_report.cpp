// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "rsineq/report.hpp"
#include "rsineq/run.hpp"

using namespace rsineq;

namespace {

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

bool same(const std::optional<double>& a, const std::optional<double>& b) {
  return a.has_value() == b.has_value() && (!a || same(*a, *b));
}

void expect_same(const Enclosure& a, const Enclosure& b) {
  EXPECT_TRUE(same(a.lo, b.lo)) << a.lo << " " << b.lo;
  EXPECT_TRUE(same(a.hi, b.hi)) << a.hi << " " << b.hi;
  EXPECT_TRUE(same(a.witness, b.witness));
  EXPECT_EQ(a.certified, b.certified);
  EXPECT_EQ(a.window_limited, b.window_limited);
  EXPECT_EQ(a.unbounded_suspected, b.unbounded_suspected);
}

void expect_same(const Certificate& a, const Certificate& b) {
  EXPECT_EQ(a.inequality_id, b.inequality_id);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_TRUE(same(a.constant, b.constant));
  EXPECT_TRUE(same(a.margin, b.margin));
  expect_same(a.lhs, b.lhs);
  expect_same(a.rhs_norm, b.rhs_norm);
  ASSERT_EQ(a.equality_diag.has_value(), b.equality_diag.has_value());
  if (a.equality_diag) {
    const auto &x = *a.equality_diag, &y = *b.equality_diag;
    EXPECT_TRUE(same(x.x0, y.x0));
    EXPECT_TRUE(same(x.fprime_at_x0, y.fprime_at_x0));
    EXPECT_TRUE(same(x.fitted_S, y.fitted_S));
    EXPECT_TRUE(same(x.fitted_C, y.fitted_C));
    EXPECT_TRUE(same(x.residual_sup, y.residual_sup));
    EXPECT_EQ(x.attains_weighted_norm, y.attains_weighted_norm);
    EXPECT_EQ(x.fit_failed, y.fit_failed);
  }
  ASSERT_EQ(a.a_enclosure.has_value(), b.a_enclosure.has_value());
  if (a.a_enclosure) expect_same(*a.a_enclosure, *b.a_enclosure);
  EXPECT_TRUE(same(a.zero_separation, b.zero_separation));
  EXPECT_TRUE(same(a.refined_constant, b.refined_constant));
  EXPECT_TRUE(same(a.refined_margin, b.refined_margin));
  EXPECT_EQ(a.equality_everywhere, b.equality_everywhere);
  EXPECT_EQ(a.rhs_unbounded_suspected, b.rhs_unbounded_suspected);
}

Certificate sample_certificate() {
  Certificate c;
  c.inequality_id = InequalityId::COR_SIN;
  c.verdict = Verdict::EQUALITY_WITHIN_TOL;
  c.constant = 3.0000000000000004;
  c.lhs = {2.9999999999999996, 3.0, 0.0, true, false, false};
  c.rhs_norm = {0.99999999999999989, 1.0000000000000002, 0.52359877559829893, true, false, false};
  c.margin = -1.1102230246251565e-16;
  c.equality_diag = EqualityDiagnosis{0.0, -2.4492935982947064e-16, 1.0, 1e-17, 3.3306690738754696e-16, false, false};
  c.a_enclosure = Enclosure{0.99999999999989997, 1.0, 1.5707963267948966, true, false, false};
  c.zero_separation = 3.1415926535897931;
  c.rhs_unbounded_suspected = false;
  return c;
}

}  // namespace

TEST(Report, EmptyJsonHasEverySection) {
  const auto j = nlohmann::json::parse(emit(Report{}, Format::Json));
  for (const char* k : {"version", "command", "config", "certificates", "enclosures", "diagnostics", "interval_sets",
                        "series", "checks", "exit_code", "error"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["version"], "1");
  EXPECT_TRUE(j["certificates"].is_array());
  EXPECT_TRUE(j["certificates"].empty());
  EXPECT_FALSE(j.contains("wall_time_ms"));
}

TEST(Report, JsonRoundTripIsFieldForField) {
  Report r;
  r.command = "check";
  r.config = {{"Q", "sin(x)"}, {"sigma", "2"}};
  r.certificates.push_back(sample_certificate());
  Certificate odd;
  odd.inequality_id = InequalityId::COR_X;
  odd.verdict = Verdict::HOLDS_OBSERVED;
  odd.constant = 1.0;
  odd.lhs = {1.0, 1.0, 0.0, true, false, false};
  odd.rhs_norm = {49.99, std::numeric_limits<double>::infinity(), 49.99, false, true, true};
  odd.margin = -std::numeric_limits<double>::infinity();
  odd.refined_constant = 1.0;
  odd.refined_margin = std::numeric_limits<double>::quiet_NaN();
  odd.equality_everywhere = true;
  odd.rhs_unbounded_suspected = true;
  r.certificates.push_back(odd);
  r.enclosures.push_back({"A_s(Q) s=5", {0.1 + 0.2, 0.30000000000000004, -1e-300, true, false, false}});
  r.diagnostics.push_back({"alpha*", 0.2541268919556893, "min(alpha1, alpha2)"});
  r.interval_sets.push_back({"E*", IntervalSet({-1.0, 1.0}, {{-0.5, 0.25}, {0.5, 0.75}})});
  r.series["ratio"] = {1.0, 2.5, 1.0 / 3.0};
  r.checks.push_back({3, "closed forms", true, "max error 1e-13"});
  r.exit_code = 4;
  r.error = "quote \" and newline \n";
  r.wall_time_ms = 123;

  const std::string bytes = emit(r, Format::Json);
  const Report back = report_from_json(bytes);
  EXPECT_EQ(back.version, r.version);
  EXPECT_EQ(back.command, r.command);
  EXPECT_EQ(back.config, r.config);
  ASSERT_EQ(back.certificates.size(), 2u);
  expect_same(back.certificates[0], r.certificates[0]);
  expect_same(back.certificates[1], r.certificates[1]);
  ASSERT_EQ(back.enclosures.size(), 1u);
  EXPECT_EQ(back.enclosures[0].name, r.enclosures[0].name);
  expect_same(back.enclosures[0].enclosure, r.enclosures[0].enclosure);
  EXPECT_EQ(back.diagnostics, r.diagnostics);
  ASSERT_EQ(back.interval_sets.size(), 1u);
  EXPECT_EQ(back.interval_sets[0].set, r.interval_sets[0].set);
  EXPECT_EQ(back.series, r.series);
  EXPECT_EQ(back.checks, r.checks);
  EXPECT_EQ(back.exit_code, 4);
  EXPECT_EQ(back.error, r.error);
  EXPECT_EQ(back.wall_time_ms, r.wall_time_ms);
  EXPECT_EQ(emit(back, Format::Json), bytes);
}

TEST(Report, IntervalSetsArePairs) {
  Report r;
  r.interval_sets.push_back({"E", IntervalSet({0.0, 4.0}, {{1.0, 2.0}, {3.0, 3.5}})});
  const auto j = to_json(r);
  const auto& s = j["interval_sets"][0];
  EXPECT_EQ(s["intervals"], nlohmann::json::parse("[[1.0,2.0],[3.0,3.5]]"));
}

TEST(Report, CsvHasHeaderAndOneRowPerCertificate) {
  Report r;
  r.certificates.push_back(sample_certificate());
  const std::string csv = emit(r, Format::Csv);
  std::istringstream in(csv);
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], csv_header());
  const auto columns = [](const std::string& s) { return std::count(s.begin(), s.end(), ',') + 1; };
  EXPECT_EQ(columns(rows[1]), columns(rows[0]));
  EXPECT_EQ(rows[1].rfind("COR_SIN,EQUALITY_WITHIN_TOL,3.0000000000000004,", 0), 0u) << rows[1];
}

TEST(Report, TextSummaryNamesTheVerdict) {
  Report r;
  r.command = "check";
  r.certificates.push_back(sample_certificate());
  const std::string t = emit(r, Format::Text);
  EXPECT_NE(t.find("COR_SIN: EQUALITY_WITHIN_TOL"), std::string::npos);
  EXPECT_NE(t.find("exit code 0"), std::string::npos);
}

TEST(Report, ShortestRoundTripNumbers) {
  for (double v : {0.1, 1.0 / 3.0, 3.0, 10.0, 99999999999999984.0, 9.5e15, 1e-300, 2.2250738585072014e-308, 6.02214076e23, -0.0})
    EXPECT_EQ(std::strtod(fmt(v).c_str(), nullptr), v) << fmt(v);
  EXPECT_EQ(fmt(0.1), "0.1");
  EXPECT_EQ(fmt(3.0), "3");
  EXPECT_EQ(fmt(10.0), "10");
  EXPECT_EQ(fmt(1234500.0), "1234500");
  EXPECT_EQ(fmt(1e20), "1e+20");
  EXPECT_EQ(fmt(2.5e-7), "2.5e-07");
}

TEST(Run, DeterministicJson) {
  RunConfig c;
  c.command = Command::Check;
  c.q_expr = "sin(x)";
  c.f_expr = "sinratio(3,1)";
  c.sigma = 2.0;
  c.tau = 1.0;
  EXPECT_EQ(emit(run(c), Format::Json), emit(run(c), Format::Json));
  c.timing = true;
  const auto r = run(c);
  ASSERT_TRUE(r.wall_time_ms);
  EXPECT_GE(*r.wall_time_ms, 0);
}

TEST(Run, ExitCodeContract) {
  RunConfig c;
  c.command = Command::Check;
  c.q_expr = "sin(x)";
  c.sigma = 2.0;
  c.tau = 1.0;
  c.f_expr = "sinratio(3,1)";
  EXPECT_EQ(run(c).exit_code, kExitOk);
  c.f_expr = "sin(3*x)/sin(2*x)";
  EXPECT_EQ(run(c).exit_code, kExitParse);
  c.f_expr = "sin(4*x)";
  auto r = run(c);
  EXPECT_EQ(r.exit_code, kExitHypothesis);
  EXPECT_NE(r.error.find("type of f <= sigma"), std::string::npos) << r.error;
  c.q_expr = "sin(x)*sin(x)";
  c.f_expr = "cos(x)";
  c.tau = 2.0;
  r = run(c);
  EXPECT_EQ(r.exit_code, kExitHypothesis);
  EXPECT_NE(r.error.find("A_{sigma+tau}(Q) > 0"), std::string::npos) << r.error;
}
