#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "collatz/affine.hpp"
#include "collatz/stats.hpp"
#include "collatz/trajectory.hpp"

namespace collatz {

/// Seed for sample `index` of a run seeded with `seed`: two rounds of the
/// splitmix64 finalizer, first over the run seed, then mixed with the index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform over [10^(digits-1), 10^digits).
Natural random_with_digits(std::size_t digits, gmp_randclass& rng);
Natural random_with_digits(std::size_t digits, std::uint64_t seed);

struct ExperimentConfig {
  std::size_t digits = 1;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  double budget_multiplier = kDefaultBudgetMultiplier;
  unsigned threads = 1;
};

struct SampleOutcome {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::optional<TrajectoryRecord> record;  // unset on failure
  std::string error;
  std::uint64_t steps_done = 0;
  std::uint64_t iterate_bits = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<SampleOutcome> samples;  // ordered by index
  SampleSet sample_set;                // successful counts, index order
  std::optional<ExperimentSummary> summary;  // when >= 2 samples succeeded

  std::size_t failures() const;
  double median_elapsed_seconds() const;
};

/// Thread count from an explicit flag, else COLLATZ_THREADS, else 1.
unsigned resolve_threads(std::optional<unsigned> flag);

/// Generates config.count numbers of config.digits digits and verifies each.
/// Results do not depend on the thread count.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                const BaseTable& table = default_base_table());

}  // namespace collatz
