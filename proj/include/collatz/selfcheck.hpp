#pragma once

#include <string>
#include <vector>

#include "collatz/affine.hpp"

namespace collatz {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Small-scale oracle suites: base table, evaluation vs. plain iteration,
/// fast vs. direct construction, the composition law, hypersteps vs. exact
/// stopping times, and the sieve vs. a brute-force filter.
std::vector<CheckResult> run_selfcheck(const BaseTable& table = default_base_table());

}  // namespace collatz
