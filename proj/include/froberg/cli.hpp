#pragma once

#include <string>
#include <vector>

#include "froberg/report.hpp"

namespace froberg::cli {

struct RunResult {
  report::Report report;
  int exit_code = 2;
  std::string output;       // standard output: the JSON report, CSV rows, or help text
  std::string diagnostics;  // standard error
};

/// args excludes the program name, e.g. {"verify", "-n", "3", "-d", "3", ...}.
RunResult run(const std::vector<std::string>& args);

}  // namespace froberg::cli
