#pragma once

#include <string>
#include <vector>

#include "conehull/serialize.hpp"

namespace conehull {

inline constexpr int kSchemaVersion = 1;

extern const std::vector<std::string> kTasks;  // hull, classify, count, trace, chern-bulk, chern-edge, bulk-edge

struct Diagnostic {
  std::string path;  // JSON pointer, "" for the document root
  std::string message;
  std::size_t line = 0;  // 1-based source line when known
};

// Schema checks; never throws. An empty result means run() will accept the
// document. expected_task is the CLI subcommand, when there is one.
std::vector<Diagnostic> validate(const Json& doc, const std::string& expected_task = "");

struct ParsedConfig {
  Json doc;
  std::vector<Diagnostic> diagnostics;  // syntax error or schema violations, with lines
};
ParsedConfig parse_config(const std::string& text, const std::string& expected_task = "");

// "file:line: /path: message"
std::string format_diagnostic(const std::string& file, const Diagnostic& d);

// Fully resolved document: every optional field filled with its default.
// Requires validate(doc, task) to be empty.
Json resolve(const Json& doc, const std::string& expected_task = "");

}  // namespace conehull
