#include "collatz/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

namespace collatz {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SampleOutcome verify_sample(const ExperimentConfig& config, std::size_t index,
                            const BaseTable& table) {
  SampleOutcome out;
  out.index = index;
  out.seed = derive_seed(config.seed, index);
  const Natural n = random_with_digits(config.digits, out.seed);
  VerifyOptions options;
  options.budget_multiplier = config.budget_multiplier;
  options.table = &table;
  try {
    out.record = hyperstep_verify(n, options);
  } catch (const BudgetExhausted& e) {
    out.error = e.what();
    out.steps_done = e.steps_done();
    out.iterate_bits = mpz_sizeinbase(e.iterate().get_mpz_t(), 2);
  }
  return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ index);
}

Natural random_with_digits(std::size_t digits, gmp_randclass& rng) {
  if (digits < 1) throw std::invalid_argument("random_with_digits: digits must be >= 1");
  Natural low;
  mpz_ui_pow_ui(low.get_mpz_t(), 10, digits - 1);
  const Natural width = 9 * low;
  return low + rng.get_z_range(width);
}

Natural random_with_digits(std::size_t digits, std::uint64_t seed) {
  gmp_randclass rng(gmp_randinit_mt);
  Natural s;
  mpz_import(s.get_mpz_t(), 1, 1, sizeof seed, 0, 0, &seed);
  rng.seed(s);
  return random_with_digits(digits, rng);
}

std::size_t ExperimentReport::failures() const {
  return static_cast<std::size_t>(std::count_if(
      samples.begin(), samples.end(), [](const SampleOutcome& s) { return !s.record; }));
}

double ExperimentReport::median_elapsed_seconds() const {
  std::vector<double> times;
  for (const auto& s : samples) {
    if (s.record) times.push_back(s.record->elapsed_seconds);
  }
  if (times.empty()) return 0.0;
  const auto mid = times.begin() + static_cast<std::ptrdiff_t>(times.size() / 2);
  std::nth_element(times.begin(), mid, times.end());
  if (times.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(times.begin(), mid);
  return 0.5 * (lower + upper);
}

unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag) return std::max(1u, *flag);
  if (const char* env = std::getenv("COLLATZ_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const BaseTable& table) {
  if (config.digits < 1) throw std::invalid_argument("digits must be >= 1");
  if (config.count < 1) throw std::invalid_argument("count must be >= 1");

  ExperimentReport report;
  report.config = config;
  report.samples.resize(config.count);

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.count && !failed; i = next++) {
      try {
        report.samples[i] = verify_sample(config, i, table);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(
      config.threads, static_cast<unsigned>(config.count)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  report.sample_set.digits = config.digits;
  report.sample_set.seed = config.seed;
  for (const auto& s : report.samples) {
    if (s.record) report.sample_set.counts.push_back(s.record->condensed_steps);
  }
  if (report.sample_set.counts.size() >= 2) report.summary = summary_stats(report.sample_set);
  return report;
}

}  // namespace collatz
