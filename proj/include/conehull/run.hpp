#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "conehull/config.hpp"

namespace conehull {

enum ExitCode : int { kExitOk = 0, kExitOther = 1, kExitSchema = 2, kExitNumerical = 3, kExitResource = 4 };

struct RunOptions {
  std::filesystem::path out;    // overrides the config's `output` when non-empty
  std::ostream* log = nullptr;  // progress lines when set
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string message;                   // error description when exit_code != 0
  std::vector<std::string> diagnostics;  // schema diagnostics (exit 2)
  std::filesystem::path report;          // report.json, when written
  std::vector<std::filesystem::path> artifacts;
};

// Validates, resolves and executes one task, writing report.json and the task's
// CSV tables into the output directory. Never throws. A report is written for
// numerical failures too (status "error"); schema violations write nothing.
RunOutcome run(const Json& doc, const std::string& task, const RunOptions& options = {});

// Reads and parses a config file, then runs it; diagnostics carry file:line anchors.
RunOutcome run_file(const std::filesystem::path& config, const std::string& task, const RunOptions& options = {});

std::string version_string();

}  // namespace conehull
