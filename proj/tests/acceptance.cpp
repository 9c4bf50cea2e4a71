// SPDX-License-Identifier: Apache-2.0
//
// One line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "oracles.hpp"
#include "rsineq/run.hpp"
#include "rsineq/suite.hpp"

using namespace rsineq;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool passed;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome timed(const std::function<CheckResult()>& check, double limit_s) {
  const auto t0 = std::chrono::steady_clock::now();
  const CheckResult r = check();
  const double t = seconds_since(t0);
  char timing[64];
  std::snprintf(timing, sizeof timing, ", %.3f s (limit %.0f s)", t, limit_s);
  return {r.passed && t < limit_s, r.detail + timing};
}

Outcome from(const CheckResult& r) { return {r.passed, r.detail}; }

Outcome criterion1() {
  auto out = timed(suite::x_weight_sharpness, 1.0);
  // ||x sin(2x)/x|| = ||sin 2x|| = 1 and f(0) = 2, so the ratio is exactly 1.
  const double rhs = oracle::max_abs([](double x) { return std::sin(2.0 * x); }, 0.0, oracle::pi).first;
  const double ratio = 2.0 / (2.0 * rhs);
  out.passed = out.passed && std::abs(ratio - 1.0) <= 1e-6;
  out.detail += "; oracle ratio " + fmt(ratio);
  return out;
}

Outcome criterion2() {
  auto out = from(suite::sine_weight_sharpness());
  const double lhs = oracle::max_abs([](double x) { return oracle::dirichlet(3, x); }, 0.0, 2.0 * oracle::pi).first;
  const double rhs = oracle::max_abs([](double x) { return std::sin(3.0 * x); }, 0.0, 2.0 * oracle::pi).first;
  out.passed = out.passed && std::abs(lhs / (3.0 * rhs) - 1.0) <= 1e-6;
  out.detail += "; oracle ratio " + fmt(lhs / (3.0 * rhs));
  return out;
}

Outcome criterion8() {
  auto out = from(suite::density_reproduction());
  const double closed = oracle::pi / std::sqrt(64.0 + 9.0 * oracle::pi * oracle::pi);
  const auto a = alpha_star(sine(1.0), 3.0, oracle::pi);
  out.passed = out.passed && std::abs(a.alpha2 - closed) <= 1e-12;
  return out;
}

Outcome criterion11() {
  RunConfig c;
  c.command = Command::Suite;
  c.seed = kSeed;
  const std::string a = emit(run(c), Format::Json);
  const std::string b = emit(run(c), Format::Json);
  return {a == b && !a.empty(), std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{
      criterion1,
      criterion2,
      [] { return from(suite::a_s_closed_forms()); },
      [] { return from(suite::a_s_monotone()); },
      [] { return from(suite::duffin_schaeffer(kSeed)); },
      [] { return from(suite::main_fuzz(kSeed)); },
      [] { return from(suite::classic_trio(kSeed)); },
      criterion8,
      [] { return timed([] { return suite::sharpness(kSeed); }, 30.0); },
      [] { return from(suite::mollifier(kSeed)); },
      criterion11,
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("criterion %zu: %s: %s\n", i + 1, o.passed ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
