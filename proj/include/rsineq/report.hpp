// SPDX-License-Identifier: Apache-2.0
//
// Run reports and their JSON / CSV / text encodings.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsineq/certificates.hpp"
#include "rsineq/interval_set.hpp"
#include "rsineq/norms.hpp"

namespace rsineq {

struct Diagnostic {
  std::string name;
  double value = 0.0;
  std::string detail;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct NamedEnclosure {
  std::string name;
  Enclosure enclosure;
};

struct NamedIntervalSet {
  std::string name;
  IntervalSet set;
};

struct CheckResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct Report {
  std::string version = "1";
  std::string command;
  std::map<std::string, std::string> config;
  std::vector<Certificate> certificates;
  std::vector<NamedEnclosure> enclosures;
  std::vector<Diagnostic> diagnostics;
  std::vector<NamedIntervalSet> interval_sets;
  std::map<std::string, std::vector<double>> series;
  std::vector<CheckResult> checks;
  int exit_code = 0;
  std::string error;
  std::optional<std::int64_t> wall_time_ms;
};

enum class Format { Json, Csv, Text };

// ---------------------------------------------------------------------------
// JSON

namespace detail {

using nlohmann::json;

// JSON has no inf/nan; those travel as strings.
inline json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline double num(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw std::invalid_argument("expected a number, got '" + s + "'");
}

inline json to_json(const Enclosure& e) {
  return json{{"lo", num(e.lo)},
              {"hi", num(e.hi)},
              {"witness", num(e.witness)},
              {"certified", e.certified},
              {"window_limited", e.window_limited},
              {"unbounded_suspected", e.unbounded_suspected}};
}

inline Enclosure enclosure_from(const json& j) {
  Enclosure e;
  e.lo = num(j.at("lo"));
  e.hi = num(j.at("hi"));
  e.witness = num(j.at("witness"));
  e.certified = j.at("certified").get<bool>();
  e.window_limited = j.at("window_limited").get<bool>();
  e.unbounded_suspected = j.at("unbounded_suspected").get<bool>();
  return e;
}

inline json to_json(const EqualityDiagnosis& d) {
  return json{{"x0", num(d.x0)},
              {"fprime_at_x0", num(d.fprime_at_x0)},
              {"fitted_S", num(d.fitted_S)},
              {"fitted_C", num(d.fitted_C)},
              {"residual_sup", num(d.residual_sup)},
              {"attains_weighted_norm", d.attains_weighted_norm},
              {"fit_failed", d.fit_failed}};
}

inline EqualityDiagnosis diagnosis_from(const json& j) {
  EqualityDiagnosis d;
  d.x0 = num(j.at("x0"));
  d.fprime_at_x0 = num(j.at("fprime_at_x0"));
  d.fitted_S = num(j.at("fitted_S"));
  d.fitted_C = num(j.at("fitted_C"));
  d.residual_sup = num(j.at("residual_sup"));
  d.attains_weighted_norm = j.at("attains_weighted_norm").get<bool>();
  d.fit_failed = j.at("fit_failed").get<bool>();
  return d;
}

inline json to_json(const Certificate& c) {
  json j{{"inequality_id", to_string(c.inequality_id)},
         {"lhs", to_json(c.lhs)},
         {"constant", num(c.constant)},
         {"rhs_norm", to_json(c.rhs_norm)},
         {"margin", num(c.margin)},
         {"verdict", to_string(c.verdict)},
         {"rhs_unbounded_suspected", c.rhs_unbounded_suspected}};
  j["equality_diag"] = c.equality_diag ? to_json(*c.equality_diag) : json(nullptr);
  if (c.a_enclosure) j["a_enclosure"] = to_json(*c.a_enclosure);
  if (c.zero_separation) j["zero_separation"] = num(*c.zero_separation);
  if (c.refined_constant) j["refined_constant"] = num(*c.refined_constant);
  if (c.refined_margin) j["refined_margin"] = num(*c.refined_margin);
  if (c.equality_everywhere) j["equality_everywhere"] = *c.equality_everywhere;
  return j;
}

inline Certificate certificate_from(const json& j) {
  Certificate c;
  c.inequality_id = inequality_from_string(j.at("inequality_id").get<std::string>());
  c.lhs = enclosure_from(j.at("lhs"));
  c.constant = num(j.at("constant"));
  c.rhs_norm = enclosure_from(j.at("rhs_norm"));
  c.margin = num(j.at("margin"));
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  c.rhs_unbounded_suspected = j.at("rhs_unbounded_suspected").get<bool>();
  if (const auto& d = j.at("equality_diag"); !d.is_null()) c.equality_diag = diagnosis_from(d);
  if (j.contains("a_enclosure")) c.a_enclosure = enclosure_from(j.at("a_enclosure"));
  if (j.contains("zero_separation")) c.zero_separation = num(j.at("zero_separation"));
  if (j.contains("refined_constant")) c.refined_constant = num(j.at("refined_constant"));
  if (j.contains("refined_margin")) c.refined_margin = num(j.at("refined_margin"));
  if (j.contains("equality_everywhere")) c.equality_everywhere = j.at("equality_everywhere").get<bool>();
  return c;
}

inline json to_json(const IntervalSet& s) {
  json arr = json::array();
  for (const auto& iv : s.intervals()) arr.push_back(json::array({num(iv.lo), num(iv.hi)}));
  return json{{"window", json::array({num(s.window().lo), num(s.window().hi)})}, {"intervals", arr}};
}

inline IntervalSet interval_set_from(const json& j) {
  const auto& w = j.at("window");
  std::vector<Interval> parts;
  for (const auto& p : j.at("intervals")) parts.push_back({num(p.at(0)), num(p.at(1))});
  return IntervalSet(Window{num(w.at(0)), num(w.at(1))}, std::move(parts));
}

}  // namespace detail

inline nlohmann::json to_json(const Report& r) {
  using detail::json;
  using detail::num;
  json j;
  j["version"] = r.version;
  j["command"] = r.command;
  j["config"] = r.config;
  j["exit_code"] = r.exit_code;
  j["error"] = r.error;
  j["certificates"] = json::array();
  for (const auto& c : r.certificates) j["certificates"].push_back(detail::to_json(c));
  j["enclosures"] = json::array();
  for (const auto& e : r.enclosures) {
    auto o = detail::to_json(e.enclosure);
    o["name"] = e.name;
    j["enclosures"].push_back(o);
  }
  j["diagnostics"] = json::array();
  for (const auto& d : r.diagnostics)
    j["diagnostics"].push_back(json{{"name", d.name}, {"value", num(d.value)}, {"detail", d.detail}});
  j["interval_sets"] = json::array();
  for (const auto& s : r.interval_sets) {
    auto o = detail::to_json(s.set);
    o["name"] = s.name;
    j["interval_sets"].push_back(o);
  }
  j["series"] = json::object();
  for (const auto& [k, v] : r.series) {
    json arr = json::array();
    for (double x : v) arr.push_back(num(x));
    j["series"][k] = arr;
  }
  j["checks"] = json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back(json{{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"detail", c.detail}});
  if (r.wall_time_ms) j["wall_time_ms"] = *r.wall_time_ms;
  return j;
}

inline Report report_from_json(const nlohmann::json& j) {
  using detail::num;
  Report r;
  r.version = j.at("version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.config = j.at("config").get<std::map<std::string, std::string>>();
  r.exit_code = j.at("exit_code").get<int>();
  r.error = j.at("error").get<std::string>();
  for (const auto& c : j.at("certificates")) r.certificates.push_back(detail::certificate_from(c));
  for (const auto& e : j.at("enclosures"))
    r.enclosures.push_back({e.at("name").get<std::string>(), detail::enclosure_from(e)});
  for (const auto& d : j.at("diagnostics"))
    r.diagnostics.push_back({d.at("name").get<std::string>(), num(d.at("value")), d.at("detail").get<std::string>()});
  for (const auto& s : j.at("interval_sets"))
    r.interval_sets.push_back({s.at("name").get<std::string>(), detail::interval_set_from(s)});
  for (const auto& [k, v] : j.at("series").items()) {
    std::vector<double> xs;
    for (const auto& x : v) xs.push_back(num(x));
    r.series[k] = std::move(xs);
  }
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("id").get<int>(), c.at("title").get<std::string>(), c.at("passed").get<bool>(),
                        c.at("detail").get<std::string>()});
  if (j.contains("wall_time_ms")) r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
  return r;
}

inline Report report_from_json(const std::string& text) { return report_from_json(nlohmann::json::parse(text)); }

// ---------------------------------------------------------------------------
// Text encodings

/// Shortest-round-trip text for a double (at most 17 significant digits).
inline std::string fmt(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  int prec = 1;
  for (; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  // %g switches to exponents once the exponent reaches the precision; keep 10 as "10".
  const int ex = v == 0.0 ? 0 : static_cast<int>(std::floor(std::log10(std::abs(v))));
  if (ex >= prec && ex < 17) std::snprintf(buf, sizeof buf, "%.*g", ex + 1, v);
  return buf;
}

inline const char* csv_header() {
  return "inequality_id,verdict,constant,lhs_lo,lhs_hi,rhs_lo,rhs_hi,margin,certified,"
         "equality_x0,fitted_S,fitted_C,residual_sup";
}

inline std::string to_csv(const Report& r) {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const auto& c : r.certificates) {
    os << to_string(c.inequality_id) << ',' << to_string(c.verdict) << ',' << fmt(c.constant) << ','
       << fmt(c.lhs.lo) << ',' << fmt(c.lhs.hi) << ',' << fmt(c.rhs_norm.lo) << ',' << fmt(c.rhs_norm.hi) << ','
       << fmt(c.margin) << ',' << (c.lhs.certified && c.rhs_norm.certified ? "true" : "false");
    if (c.equality_diag) {
      const auto& d = *c.equality_diag;
      os << ',' << fmt(d.x0) << ',' << fmt(d.fitted_S) << ',' << fmt(d.fitted_C) << ',' << fmt(d.residual_sup);
    } else {
      os << ",,,,";
    }
    os << '\n';
  }
  return os.str();
}

inline std::string to_text(const Report& r) {
  std::ostringstream os;
  os << "rsineq " << r.command << " (report version " << r.version << ")\n";
  if (!r.error.empty()) os << "error: " << r.error << '\n';
  for (const auto& c : r.certificates) {
    os << to_string(c.inequality_id) << ": " << to_string(c.verdict) << '\n'
       << "  lhs      [" << fmt(c.lhs.lo) << ", " << fmt(c.lhs.hi) << "]\n"
       << "  constant " << fmt(c.constant) << '\n'
       << "  rhs      [" << fmt(c.rhs_norm.lo) << ", " << fmt(c.rhs_norm.hi) << "]\n"
       << "  margin   " << fmt(c.margin) << '\n';
    if (c.a_enclosure) os << "  A        [" << fmt(c.a_enclosure->lo) << ", " << fmt(c.a_enclosure->hi) << "]\n";
    if (c.refined_constant)
      os << "  refined constant " << fmt(*c.refined_constant) << ", margin " << fmt(*c.refined_margin) << '\n';
    if (c.equality_diag) {
      const auto& d = *c.equality_diag;
      os << "  equality at x0=" << fmt(d.x0) << ": f'(x0)=" << fmt(d.fprime_at_x0) << ", Qf ~ "
         << fmt(d.fitted_S) << " sin + " << fmt(d.fitted_C) << " cos, residual " << fmt(d.residual_sup) << '\n';
    }
  }
  for (const auto& e : r.enclosures)
    os << e.name << ": [" << fmt(e.enclosure.lo) << ", " << fmt(e.enclosure.hi) << "]"
       << (e.enclosure.certified ? "" : " (uncertified)") << (e.enclosure.window_limited ? " (window-limited)" : "")
       << '\n';
  for (const auto& d : r.diagnostics)
    os << d.name << " = " << fmt(d.value) << (d.detail.empty() ? "" : "  " + d.detail) << '\n';
  for (const auto& s : r.interval_sets)
    os << s.name << ": " << s.set.size() << " intervals, measure " << fmt(s.set.measure()) << '\n';
  for (const auto& c : r.checks)
    os << "[" << (c.passed ? "PASS" : "FAIL") << "] " << c.id << ". " << c.title << ": " << c.detail << '\n';
  if (r.wall_time_ms) os << "wall time " << *r.wall_time_ms << " ms\n";
  os << "exit code " << r.exit_code << '\n';
  return os.str();
}

inline std::string emit(const Report& r, Format f) {
  switch (f) {
    case Format::Csv:
      return to_csv(r);
    case Format::Text:
      return to_text(r);
    case Format::Json:
    default:
      return to_json(r).dump(2) + "\n";
  }
}

}  // namespace rsineq
