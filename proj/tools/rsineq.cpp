// SPDX-License-Identifier: Apache-2.0

#include <cstdio>

#include "rsineq/cli.hpp"

int main(int argc, char** argv) {
  const auto parsed = rsineq::parse_command_line(argc, argv);
  if (!parsed.config) {
    std::fputs(parsed.message.c_str(), parsed.exit_code == 0 ? stdout : stderr);
    return parsed.exit_code;
  }
  const rsineq::Report report = rsineq::run(*parsed.config);
  if (!report.error.empty()) std::fprintf(stderr, "rsineq: %s\n", report.error.c_str());
  if (!rsineq::write_report(report, *parsed.config)) {
    std::fprintf(stderr, "rsineq: cannot write %s\n", parsed.config->output_path.c_str());
    return rsineq::kExitParse;
  }
  return report.exit_code;
}
