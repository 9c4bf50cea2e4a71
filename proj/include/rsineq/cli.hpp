// SPDX-License-Identifier: Apache-2.0
//
// Command-line parsing. Flags override --config file values, which override defaults.

#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsineq/run.hpp"

namespace rsineq {

struct CliOutcome {
  std::optional<RunConfig> config;  // empty when parsing stopped (help or error)
  int exit_code = 0;
  std::string message;
};

namespace detail {

inline std::string trim_copy(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// Reads `key = value` lines; '#' starts a comment, surrounding quotes are dropped.
inline std::vector<std::pair<std::string, std::string>> read_flat_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim_copy(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(no) + ": expected key=value");
    std::string key = trim_copy(line.substr(0, eq)), value = trim_copy(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
      value = value.substr(1, value.size() - 2);
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

inline bool given(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

}  // namespace detail

inline CliOutcome parse_command_line(int argc, const char* const* argv) {
  CliOutcome out;
  // Config values go in front of the command-line arguments, and only for keys
  // the command line does not set.
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (!config_path.empty()) {
    std::vector<std::pair<std::string, std::string>> kv;
    try {
      kv = detail::read_flat_config(config_path);
    } catch (const std::invalid_argument& e) {
      out.exit_code = kExitParse;
      out.message = std::string(e.what()) + "\n";
      return out;
    }
    std::vector<std::string> pre;
    const bool has_command = !args.empty() && args[0].rfind("--", 0) != 0;
    for (const auto& [k, v] : kv) {
      if (k == "command") {
        if (!has_command) pre.insert(pre.begin(), v);
        continue;
      }
      const std::string flag = "--" + k;
      if (detail::given(args, flag)) continue;
      pre.push_back(flag);
      pre.push_back(v);
    }
    args.insert(args.begin(), pre.begin(), pre.end());
  }

  RunConfig c;
  std::string command = "check", format = "json";
  CLI::App app{"Certified Riesz-Schur type inequalities for entire functions of exponential type", "rsineq"};
  std::string config_file;
  app.add_option("--config", config_file, "flat key=value file; command-line flags take precedence");
  app.add_option("command", command, "check | a-s | sup | zeros | density | sharpness | suite")
      ->check(CLI::IsMember({"check", "a-s", "sup", "zeros", "density", "sharpness", "suite"}));
  app.add_option("--Q", c.q_expr, "weight Q");
  app.add_option("--f", c.f_expr, "function f (also g, P or T for the other checks)");
  app.add_option("--sigma", c.sigma, "type bound of f (gamma for duffin-schaeffer)");
  app.add_option("--tau", c.tau, "type bound of Q");
  app.add_option("--s", c.s_values, "s values for a-s (comma separated) or s for density")->delimiter(',');
  app.add_option("--window", c.grid.window, "half-width of the scan window, 0 = automatic");
  app.add_option("--step", c.grid.step, "grid step, 0 = automatic");
  app.add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", c.output_path, "write the report here instead of stdout");
  app.add_option("--seed", c.seed, "seed for randomized families");
  app.add_option("--inequality", c.inequality,
                 "main | cor-sin | cor-x | duffin-schaeffer | rs-classic | rs-trig | schur-poly");
  app.add_option("--degree", c.degree, "degree n for the classical inequalities (default: inferred)");
  app.add_option("--basis", c.basis, "sharpness basis: auto | trig | sinc");
  app.add_option("--basis-size", c.basis_size, "sharpness basis size m");
  app.add_option("--iterations", c.iterations, "sharpness iterations");
  app.add_option("--family-size", c.family_size, "random family size for the density constant chain");
  app.add_flag("--timing", c.timing, "include wall_time_ms in the report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os, err;
    out.exit_code = app.exit(e, os, err);
    if (out.exit_code != 0) out.exit_code = kExitParse;
    out.message = os.str() + err.str();
    return out;
  }
  c.command = command_from_string(command);
  c.format = format_from_string(format);
  out.config = c;
  return out;
}

/// Writes the encoded report; returns false if the destination cannot be written.
inline bool write_report(const Report& r, const RunConfig& c) {
  const std::string bytes = emit(r, c.format);
  if (c.output_path.empty()) {
    std::fwrite(bytes.data(), 1, bytes.size(), stdout);
    return true;
  }
  std::ofstream f(c.output_path, std::ios::binary);
  if (!f) return false;
  f << bytes;
  return static_cast<bool>(f);
}

}  // namespace rsineq
