#pragma once

#include <iosfwd>
#include <string>

#include "frechet/io.hpp"
#include "frechet/semi_frechet.hpp"
#include "frechet/tolerance.hpp"
#include "frechet/weak_frechet.hpp"

namespace frechet {

/// Effective settings of one CLI invocation, echoed as the first output line.
struct RunConfig {
  std::string command;
  Tolerance tolerance;
  SearchMode mode = SearchMode::ExactCriticals;
  bool cross_check = false;  // compute: also run the other search mode and report both
  int threads = 1;
  double eps = 0.0;
  std::string svg_path;
  std::string graph_path;
  Budget budget;
};

Json to_json(const RunConfig& c);

/// Parses "rel" or "rel,abs". Throws InputError.
Tolerance parse_tolerance(const std::string& text);

enum ExitCode { kExitOk = 0, kExitFalse = 1, kExitInput = 2, kExitNumeric = 3 };

/// Runs the command line; results go to `out`, diagnostics to `err`. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frechet
