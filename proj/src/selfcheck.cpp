#include "collatz/selfcheck.hpp"

#include <exception>
#include <functional>
#include <string>

#include "collatz/sieve.hpp"
#include "collatz/trajectory.hpp"

namespace collatz {

namespace {

Natural nat(std::uint64_t v) { return Natural(static_cast<unsigned long>(v)); }

Natural iterate_t(Natural x, std::uint64_t k) {
  for (std::uint64_t i = 0; i < k; ++i) x = t_step(x);
  return x;
}

// Returns an empty string on success, else the first mismatch.
using Suite = std::function<std::string()>;

std::string check_base_table(const BaseTable& table) {
  for (unsigned k = 1; k <= table.depth(); ++k) {
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
      if (!(table.at(k, r) == poly_direct(nat(r), k))) {
        return "table entry differs at k=" + std::to_string(k) + " r=" + std::to_string(r);
      }
    }
  }
  return {};
}

std::string check_eval_oracle(const BaseTable& table) {
  for (std::uint64_t k = 1; k <= 10; ++k) {
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
      for (std::uint64_t lift : {0ULL, 1ULL, 7ULL}) {
        const Natural x = nat(r + (lift << k));
        if (x == 0) continue;
        if (affine_eval_checked(poly_fast(x, k, table), x) != iterate_t(x, k)) {
          return "eval mismatch at k=" + std::to_string(k) + " x=" + x.get_str();
        }
      }
    }
  }
  return {};
}

std::string check_fast_direct(const BaseTable& table) {
  for (std::uint64_t k = 1; k <= 12; ++k) {
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
      if (!(poly_fast(nat(r), k, table) == poly_direct(nat(r), k))) {
        return "poly_fast differs at k=" + std::to_string(k) + " r=" + std::to_string(r);
      }
    }
  }
  return {};
}

std::string check_composition_law() {
  for (std::uint64_t k = 1; k <= 5; ++k) {
    for (std::uint64_t l = 1; l <= 5; ++l) {
      for (std::uint64_t r = 0; r < (std::uint64_t{1} << (k + l)); ++r) {
        const AffineStep low = poly_direct(nat(r), l);
        const Natural image = affine_eval_checked(low, nat(r));
        const AffineStep composed = affine_compose(poly_direct(image, k), low);
        if (!(composed == poly_direct(nat(r), k + l))) {
          return "composition law fails at k=" + std::to_string(k) + " l=" +
                 std::to_string(l) + " r=" + std::to_string(r);
        }
      }
    }
  }
  return {};
}

std::string check_hypersteps(const BaseTable& table) {
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    VerifyOptions options;
    options.table = &table;
    const auto record = hyperstep_verify(nat(n), options);
    const auto exact = exact_stopping_time(nat(n), 100000);
    const auto slack = floor_log2(nat(n)) / 2 + 2;
    if (record.condensed_steps < exact || record.condensed_steps - exact > slack) {
      return "hyperstep count out of range at n=" + std::to_string(n);
    }
  }
  return {};
}

std::string check_sieve() {
  SieveLevel level = sieve_root();
  for (unsigned k = 1; k <= 12; ++k) {
    level = sieve_next(level);
    std::size_t at = 0;
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
      if (!survives(r, k)) continue;
      if (at >= level.survivors.size() || level.survivors[at].residue != r) {
        return "sieve misses residue " + std::to_string(r) + " at k=" + std::to_string(k);
      }
      ++at;
    }
    if (at != level.survivors.size()) {
      return "sieve has extra residues at k=" + std::to_string(k);
    }
  }
  return {};
}

CheckResult run_suite(std::string name, const Suite& suite) {
  CheckResult result{std::move(name), false, {}};
  try {
    result.detail = suite();
    result.passed = result.detail.empty();
  } catch (const std::exception& e) {
    result.detail = std::string("exception: ") + e.what();
  }
  return result;
}

}  // namespace

std::vector<CheckResult> run_selfcheck(const BaseTable& table) {
  std::vector<CheckResult> results;
  results.push_back(run_suite("base-table", [&] { return check_base_table(table); }));
  results.push_back(run_suite("eval-oracle", [&] { return check_eval_oracle(table); }));
  results.push_back(run_suite("fast-direct", [&] { return check_fast_direct(table); }));
  results.push_back(run_suite("composition-law", check_composition_law));
  results.push_back(run_suite("hyperstep-oracle", [&] { return check_hypersteps(table); }));
  results.push_back(run_suite("sieve-brute-force", check_sieve));
  return results;
}

}  // namespace collatz
