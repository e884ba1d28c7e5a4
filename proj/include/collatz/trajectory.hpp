#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>

#include "collatz/affine.hpp"

namespace collatz {

/// Outcome of verifying one start value.
struct TrajectoryRecord {
  std::size_t start_digits = 0;
  std::uint64_t condensed_steps = 0;  // total T-iterations performed
  std::uint64_t hypersteps = 0;       // number of condensed blocks
  bool reached_one = false;
  double elapsed_seconds = 0.0;

  /// Equality ignoring elapsed_seconds.
  bool same_outcome(const TrajectoryRecord& other) const {
    return start_digits == other.start_digits &&
           condensed_steps == other.condensed_steps &&
           hypersteps == other.hypersteps && reached_one == other.reached_one;
  }
};

/// The iteration budget ran out before reaching 1.  Carries the iterate so a
/// potential counterexample can be dumped.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(Natural iterate, std::uint64_t steps_done);

  const Natural& iterate() const { return iterate_; }
  std::uint64_t steps_done() const { return steps_done_; }

 private:
  Natural iterate_;
  std::uint64_t steps_done_;
};

/// n/2 for even n, (3n+1)/2 for odd n.  Rejects n = 0.
Natural t_step(const Natural& n);

/// Smallest s with T^(s)(n) = 1, by plain iteration.
std::uint64_t exact_stopping_time(const Natural& n, std::uint64_t budget);

/// floor(log2 n) for n >= 1.
std::uint64_t floor_log2(const Natural& n);

/// Exact number of decimal digits of n >= 1.
std::size_t decimal_digits(const Natural& n);

/// Block size for one hyperstep: max(1, floor(log2 n) / 2).
std::uint64_t step_policy(const Natural& n);

inline constexpr double kDefaultBudgetMultiplier = 10.0;

/// multiplier * max(1, floor(log2 n)) / log2(2/sqrt 3), rounded up.
std::uint64_t default_budget(const Natural& n,
                             double multiplier = kDefaultBudgetMultiplier);

struct HyperstepProgress {
  std::uint64_t hypersteps;
  std::uint64_t condensed_steps;
  std::uint64_t block_size;
  std::uint64_t iterate_bits;
};

struct VerifyOptions {
  std::optional<std::uint64_t> budget;  // defaults to default_budget(n, budget_multiplier)
  double budget_multiplier = kDefaultBudgetMultiplier;
  const BaseTable* table = nullptr;     // defaults to default_base_table()
  std::function<void(const HyperstepProgress&)> progress;  // once per hyperstep
};

/// Drives n to 1 with blocks of step_policy(n) iterations each.  Blocks are
/// never cut short, so the count may include laps of the 1 -> 2 -> 1 cycle.
TrajectoryRecord hyperstep_verify(const Natural& n, const VerifyOptions& options = {});

}  // namespace collatz
