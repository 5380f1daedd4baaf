#pragma once

#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace gdam::cli {

/// Shared state of one command-line invocation.
struct Invocation {
  std::vector<std::string> argv;
  std::string out_dir;
  bool timestamp = true;
  /// Set by the selected subcommand.
  std::function<int()> action;
};

void add_trace2d(CLI::App& app, Invocation& inv);
void add_solve(CLI::App& app, Invocation& inv);
void add_snl(CLI::App& app, Invocation& inv);
void add_bench(CLI::App& app, Invocation& inv);

/// Parses and runs a command line (argv[0] included); returns the exit code.
int dispatch(const std::vector<std::string>& argv);

}  // namespace gdam::cli
