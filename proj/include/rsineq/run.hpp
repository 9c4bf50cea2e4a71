// SPDX-License-Identifier: Apache-2.0
//
// Command dispatch behind the rsineq executable.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rsineq/certificates.hpp"
#include "rsineq/density.hpp"
#include "rsineq/parse.hpp"
#include "rsineq/report.hpp"
#include "rsineq/sharpness.hpp"
#include "rsineq/suite.hpp"

namespace rsineq {

enum class Command { Check, AS, Sup, Zeros, Density, Sharpness, Suite };

inline constexpr std::array<std::string_view, 7> kCommandNames = {"check",   "a-s",       "sup",  "zeros",
                                                                  "density", "sharpness", "suite"};

inline std::string to_string(Command c) { return std::string(kCommandNames[static_cast<std::size_t>(c)]); }
inline Command command_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kCommandNames.size(); ++i)
    if (kCommandNames[i] == s) return static_cast<Command>(i);
  throw std::invalid_argument("unknown command: " + std::string(s));
}

inline std::string to_string(Format f) { return f == Format::Csv ? "csv" : f == Format::Text ? "text" : "json"; }
inline Format format_from_string(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw std::invalid_argument("unknown format: " + std::string(s));
}

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitViolation = 3;
inline constexpr int kExitInconclusive = 4;
inline constexpr int kExitInternal = 5;

struct RunConfig {
  Command command = Command::Check;
  std::string q_expr;
  std::string f_expr;
  double sigma = 1.0;
  double tau = 0.0;
  std::vector<double> s_values;
  GridSpec grid;
  std::string output_path;
  Format format = Format::Json;
  std::uint64_t seed = 0;
  // check: main, cor-sin, cor-x, duffin-schaeffer, rs-classic, rs-trig, schur-poly
  std::string inequality = "main";
  int degree = -1;  // classical inequalities; -1 infers it from f
  // sharpness
  std::string basis = "auto";
  int basis_size = 4;
  int iterations = 2000;
  // density
  int family_size = 20;
  bool timing = false;
};

inline std::map<std::string, std::string> echo(const RunConfig& c) {
  std::map<std::string, std::string> m;
  m["command"] = to_string(c.command);
  m["Q"] = c.q_expr;
  m["f"] = c.f_expr;
  m["sigma"] = fmt(c.sigma);
  m["tau"] = fmt(c.tau);
  std::string s;
  for (double v : c.s_values) s += (s.empty() ? "" : ",") + fmt(v);
  m["s"] = s;
  m["window"] = fmt(c.grid.window);
  m["step"] = fmt(c.grid.step);
  m["format"] = to_string(c.format);
  m["seed"] = std::to_string(c.seed);
  m["inequality"] = c.inequality;
  m["degree"] = std::to_string(c.degree);
  m["basis"] = c.basis;
  m["basis_size"] = std::to_string(c.basis_size);
  m["iterations"] = std::to_string(c.iterations);
  m["family_size"] = std::to_string(c.family_size);
  return m;
}

inline int exit_code_for(Verdict v) {
  switch (v) {
    case Verdict::VIOLATION_SUSPECTED:
      return kExitViolation;
    case Verdict::INCONCLUSIVE:
      return kExitInconclusive;
    default:
      return kExitOk;
  }
}

namespace detail {

inline ExpTypeFn need(const std::string& src, const char* what) {
  if (src.empty()) throw std::invalid_argument(std::string("missing --") + what);
  return parse_expr(src);
}

inline void require_sigma_tau(const RunConfig& c) {
  if (!(c.sigma > 0.0) || !(c.tau >= 0.0))
    throw HypothesisError("sigma > 0 and tau >= 0", "got sigma=" + fmt(c.sigma) + ", tau=" + fmt(c.tau));
}

inline void run_check(const RunConfig& c, Report& r) {
  const std::string& k = c.inequality;
  Certificate cert;
  if (k == "main") {
    require_sigma_tau(c);
    cert = check_main(need(c.q_expr, "Q"), need(c.f_expr, "f"), c.sigma, c.tau, c.grid);
  } else if (k == "cor-sin") {
    require_sigma_tau(c);
    cert = check_cor_sin(need(c.f_expr, "f"), c.sigma, c.tau, c.grid);
  } else if (k == "cor-x") {
    require_sigma_tau(c);
    cert = check_cor_x(need(c.f_expr, "f"), c.sigma, c.grid);
  } else if (k == "duffin-schaeffer") {
    cert = check_duffin_schaeffer(need(c.f_expr, "f"), c.sigma, c.grid);
  } else if (k == "rs-classic" || k == "rs-trig" || k == "schur-poly") {
    const ExpTypeFn p = need(c.f_expr, "f");
    const SchurKind kind = k == "rs-trig"      ? SchurKind::Trigonometric
                           : k == "rs-classic" ? SchurKind::RieszSchur
                                               : SchurKind::Polynomial;
    int n = c.degree;
    if (n < 0) {
      if (kind == SchurKind::Trigonometric) {
        n = static_cast<int>(std::ceil(p.type_bound() - 1e-12));
      } else if (auto co = as_polynomial(p)) {
        n = static_cast<int>(co->size()) - 1;
      } else {
        throw std::invalid_argument("--f must be a polynomial for " + k);
      }
    }
    cert = check_classic_schur(kind, p, n, c.grid);
  } else {
    throw std::invalid_argument("unknown inequality: " + k);
  }
  r.exit_code = exit_code_for(cert.verdict);
  r.certificates.push_back(std::move(cert));
}

inline void run_a_s(const RunConfig& c, Report& r) {
  const ExpTypeFn Q = need(c.q_expr, "Q");
  std::vector<double> s = c.s_values;
  if (s.empty()) s.push_back(c.sigma + c.tau);
  std::vector<Enclosure> es;
  if (std::is_sorted(s.begin(), s.end())) {
    es = a_s_profile(Q, s, c.grid);
  } else {
    for (double v : s) es.push_back(inf_quadratic(Q, v, c.grid));
  }
  for (std::size_t i = 0; i < s.size(); ++i) r.enclosures.push_back({"A_s(Q) at s=" + fmt(s[i]), es[i]});
}

inline void run_zeros(const RunConfig& c, Report& r) {
  const ExpTypeFn Q = need(c.q_expr, "Q");
  std::optional<Window> w;
  if (c.grid.window > 0.0) w = Window{-c.grid.window, c.grid.window};
  const ZeroSet z = real_zeros(Q, w, c.grid);
  r.series["zeros"] = z.zeros;
  r.series["multiplicity_suspect"] = z.multiplicity_suspect;
  r.diagnostics.push_back({"separation", z.separation, z.window_limited ? "window-limited" : ""});
  r.diagnostics.push_back({"zero_count", static_cast<double>(z.zeros.size()), ""});
}

inline void run_density(const RunConfig& c, Report& r) {
  const ExpTypeFn Q = need(c.q_expr, "Q");
  require_sigma_tau(c);
  const double s = c.s_values.empty() ? c.sigma + c.tau : c.s_values.front();
  const ZeroSet z = real_zeros(Q, std::nullopt, c.grid);
  std::optional<Window> w;
  if (c.grid.window > 0.0) w = Window{-c.grid.window, c.grid.window};
  const AlphaStar a = alpha_star(Q, s, z.separation, w, c.grid);
  const DensityReport dr = ld_dense_check(a.E_star, z.separation / 2.0, z.separation / 4.0);
  const std::string lim = a.window_limited ? "window-limited" : "";
  r.diagnostics.push_back({"d", z.separation, z.window_limited ? "window-limited" : ""});
  r.diagnostics.push_back({"C2", a.C2, ""});
  r.diagnostics.push_back({"alpha1", a.alpha1, lim});
  r.diagnostics.push_back({"alpha2", a.alpha2, ""});
  r.diagnostics.push_back({"alpha_star", a.alpha_star, lim});
  r.diagnostics.push_back({"is_dense", dr.is_dense ? 1.0 : 0.0, "L=d/2, delta=d/4"});
  r.diagnostics.push_back({"worst_measure", dr.worst_measure, "window start " + fmt(dr.worst_window_start)});
  r.diagnostics.push_back({"tangency", a.sublevel.tangency ? 1.0 : 0.0, ""});
  r.interval_sets.push_back({"E_star", a.E_star});
  r.interval_sets.push_back({"E_alpha_star", a.sublevel.set});
  if (c.family_size > 0) {
    const ChainResult ch = schur_constant_chain(Q, c.sigma, c.tau, c.family_size, c.seed, c.grid);
    r.diagnostics.push_back({"C1_est", ch.C1_est, "empirical family maximum, not a certified constant"});
    r.diagnostics.push_back({"C3_est", ch.C3_est, "C1_est / alpha*"});
    r.diagnostics.push_back({"chain_violations", static_cast<double>(ch.violations),
                             "of " + std::to_string(ch.checked) + " family members"});
  }
}

inline void run_sharpness(const RunConfig& c, Report& r) {
  const ExpTypeFn Q = need(c.q_expr, "Q");
  require_sigma_tau(c);
  SharpnessBasis b = SharpnessBasis::Auto;
  if (c.basis == "trig") b = SharpnessBasis::Trig;
  else if (c.basis == "sinc") b = SharpnessBasis::Sinc;
  else if (c.basis != "auto") throw std::invalid_argument("unknown basis: " + c.basis);
  const auto s = sharpness_search(Q, c.sigma, c.tau, c.basis_size, c.iterations, c.seed, b, c.grid);
  r.diagnostics.push_back({"best_ratio", s.best_ratio, print(s.best)});
  r.diagnostics.push_back({"constant", s.constant, ""});
  r.diagnostics.push_back({"x0", s.x0, ""});
  r.diagnostics.push_back({"iterations", static_cast<double>(s.iterations), s.basis + " basis"});
  r.series["coefficients"] = s.coefficients;
}

}  // namespace detail

/// Never throws for bad input; failures are reported through exit_code and error.
inline Report run(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.command = to_string(c.command);
  r.config = echo(c);
  try {
    switch (c.command) {
      case Command::Check:
        detail::run_check(c, r);
        break;
      case Command::AS:
        detail::run_a_s(c, r);
        break;
      case Command::Sup:
        r.enclosures.push_back({"sup|f|", sup_norm(detail::need(c.f_expr, "f"), c.grid)});
        break;
      case Command::Zeros:
        detail::run_zeros(c, r);
        break;
      case Command::Density:
        detail::run_density(c, r);
        break;
      case Command::Sharpness:
        detail::run_sharpness(c, r);
        break;
      case Command::Suite:
        r.checks = suite::run_battery(c.seed);
        for (const auto& k : r.checks)
          if (!k.passed) r.exit_code = kExitViolation;
        break;
    }
  } catch (const ParseError& e) {
    r.exit_code = kExitParse;
    r.error = e.what();
  } catch (const HypothesisError& e) {
    r.exit_code = kExitHypothesis;
    r.error = e.what();
  } catch (const InternalConsistencyError& e) {
    r.exit_code = kExitInternal;
    r.error = std::string("internal consistency: ") + e.what();
  } catch (const std::invalid_argument& e) {
    r.exit_code = kExitParse;
    r.error = e.what();
  } catch (const std::exception& e) {
    r.exit_code = kExitInternal;
    r.error = e.what();
  }
  if (c.timing) {
    r.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  }
  return r;
}

}  // namespace rsineq
