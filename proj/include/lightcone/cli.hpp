#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lightcone {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDomain = 2,
  kExitIo = 3,
  kExitBlowup = 4,
};

// args excludes the program name. Payload goes to `out` (or --out), messages to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lightcone
