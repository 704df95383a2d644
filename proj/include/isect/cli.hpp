#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isect {

// Exit codes.
enum ExitCode : int {
  kOk = 0,
  kParseFailure = 1,
  kTypeFailure = 2,
  kNotUniform = 3,
  kFuelFailure = 4,
  kInvariantFailure = 5,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isect
