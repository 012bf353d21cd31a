#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "conehull/parallel.hpp"
#include "conehull/run.hpp"

int main(int argc, char** argv) {
  using namespace conehull;
  CLI::App app{"conehull: cone-semigroup hulls, boundary traces and bulk-edge pairings"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  std::string config, out;
  std::size_t threads = 0;
  bool verbose = false;
  for (const auto& task : kTasks) {
    auto* sub = app.add_subcommand(task, "run the " + task + " task");
    sub->add_option("--config", config, "config document (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides the config's `output`)");
    sub->add_option("--threads", threads, "cap on internal parallelism (0 = all cores)");
    sub->add_flag("--verbose", verbose, "progress lines on stderr");
  }
  auto* val = app.add_subcommand("validate", "check a config against the schema and print diagnostics");
  val->add_option("--config", config, "config document (JSON)")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitSchema;
  }

  if (val->parsed()) {
    std::ifstream in(config, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    const auto parsed = parse_config(text.str());
    for (const auto& d : parsed.diagnostics) std::cout << format_diagnostic(config, d) << "\n";
    if (parsed.diagnostics.empty()) std::cout << config << ": ok\n";
    return parsed.diagnostics.empty() ? kExitOk : kExitSchema;
  }

  const std::string task = app.get_subcommands().front()->get_name();
  set_thread_count(threads);
  RunOptions options;
  options.out = out;
  if (verbose) options.log = &std::cerr;
  const auto outcome = run_file(config, task, options);
  for (const auto& d : outcome.diagnostics) std::cerr << d << "\n";
  if (outcome.exit_code != kExitOk) std::cerr << "conehull " << task << ": " << outcome.message << "\n";
  if (!outcome.report.empty()) std::cout << outcome.report.string() << "\n";
  return outcome.exit_code;
}
