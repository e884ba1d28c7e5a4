#include "collatz/trajectory.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace collatz {

namespace {

// log2(2 / sqrt(3))
const double kLog2ShrinkPerStep = 1.0 - 0.5 * std::log2(3.0);

void require_positive(const Natural& n, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be >= 1");
}

}  // namespace

BudgetExhausted::BudgetExhausted(Natural iterate, std::uint64_t steps_done)
    : std::runtime_error("iteration budget exhausted after " +
                         std::to_string(steps_done) + " steps (iterate has " +
                         std::to_string(mpz_sizeinbase(iterate.get_mpz_t(), 2)) +
                         " bits)"),
      iterate_(std::move(iterate)),
      steps_done_(steps_done) {}

Natural t_step(const Natural& n) {
  require_positive(n, "t_step");
  if (mpz_even_p(n.get_mpz_t())) return n >> 1;
  return (3 * n + 1) >> 1;
}

std::uint64_t exact_stopping_time(const Natural& n, std::uint64_t budget) {
  require_positive(n, "exact_stopping_time");
  Natural x = n;
  std::uint64_t steps = 0;
  while (x != 1) {
    if (steps >= budget) throw BudgetExhausted(x, steps);
    x = t_step(x);
    ++steps;
  }
  return steps;
}

std::uint64_t floor_log2(const Natural& n) {
  require_positive(n, "floor_log2");
  return mpz_sizeinbase(n.get_mpz_t(), 2) - 1;
}

std::size_t decimal_digits(const Natural& n) {
  require_positive(n, "decimal_digits");
  // mpz_sizeinbase may overshoot by one for base 10.
  const std::size_t estimate = mpz_sizeinbase(n.get_mpz_t(), 10);
  if (estimate == 1) return 1;
  Natural low;
  mpz_ui_pow_ui(low.get_mpz_t(), 10, estimate - 1);
  return n < low ? estimate - 1 : estimate;
}

std::uint64_t step_policy(const Natural& n) {
  const std::uint64_t half = floor_log2(n) / 2;
  return half > 0 ? half : 1;
}

std::uint64_t default_budget(const Natural& n, double multiplier) {
  const std::uint64_t bits = floor_log2(n);
  const double scaled = multiplier * static_cast<double>(bits > 0 ? bits : 1) /
                        kLog2ShrinkPerStep;
  return static_cast<std::uint64_t>(std::ceil(scaled));
}

TrajectoryRecord hyperstep_verify(const Natural& n, const VerifyOptions& options) {
  require_positive(n, "hyperstep_verify");
  const auto start = std::chrono::steady_clock::now();
  const BaseTable& table = options.table ? *options.table : default_base_table();
  const std::uint64_t budget =
      options.budget ? *options.budget : default_budget(n, options.budget_multiplier);

  TrajectoryRecord record;
  record.start_digits = decimal_digits(n);

  Natural x = n;
  while (x != 1) {
    if (record.condensed_steps >= budget) throw BudgetExhausted(x, record.condensed_steps);
    const std::uint64_t block = step_policy(x);
    const AffineStep pol = poly_fast(x, block, table);
    x = affine_eval(pol, x);
    record.condensed_steps += block;
    ++record.hypersteps;
    if (options.progress) {
      options.progress({record.hypersteps, record.condensed_steps, block,
                        mpz_sizeinbase(x.get_mpz_t(), 2)});
    }
  }
  record.reached_one = true;
  record.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

}  // namespace collatz
