#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nqkit::cli {

enum ExitCode : int {
  ok = 0,
  error = 1,          // bad arguments to an operation, unknown fixture, I/O
  parse_error = 2,    // malformed command line, word or presentation text
  budget_exceeded = 3,
  check_failed = 4,   // verify / hall-witt-check found a counterexample
  internal_error = 70,
};

// Runs one invocation. args[0] is the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace nqkit::cli
