#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "summability/kernel.hpp"
#include "summability/test_function.hpp"

namespace summa {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInconclusive = 2,
  kExitVerificationFailure = 3,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "sin", "catalog:const(2)", "sin@mul", ... resolved on the given domain.
summability::TestFunction resolve_function(const std::string& spec, summability::Flavor flavor);

}  // namespace summa
