#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

#include "collatz/affine.hpp"

namespace collatz::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kVerificationAnomaly = 2,
  kResourceGuard = 3,
};

/// Bad flags, unreadable files, malformed numbers.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses a positive decimal integer, ignoring all whitespace.
Natural parse_decimal(const std::string& text);

/// Entry point behind the `collatz` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace collatz::cli
