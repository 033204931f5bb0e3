#ifndef NCLAT_CLI_HPP
#define NCLAT_CLI_HPP

#include "nclat/json_io.hpp"

#include <string>
#include <vector>

namespace nclat {

// Exit codes: 0 all checks pass (vacuous/info rows allowed), 1 at least
// one failed check, 2 usage error.
struct RunResult {
  int exit_code = 0;
  Json report;           // {command, parameters, checks, wall_time_ms}
  std::string rendered;  // what the chosen --format prints
  std::string error;     // set on usage errors
  std::string out_path;  // --out target, empty for stdout
};

// Runs one subcommand invocation, given argv without the program name.
RunResult run(const std::vector<std::string>& args);

}  // namespace nclat

#endif  // NCLAT_CLI_HPP
