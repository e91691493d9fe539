#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace causalcheck::cli {

enum ExitCode : int {
  kConforming = 0,
  kViolation = 1,
  kUsageError = 2,
  kEngineDisagreement = 3,
};

// Entry point shared by the binary and the tests. args[0] is the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace causalcheck::cli
