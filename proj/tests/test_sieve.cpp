#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "collatz/affine.hpp"
#include "collatz/sieve.hpp"

namespace {

// Independent filter: simulate the first k parities of r directly and apply
// the coefficient test after every step.
bool brute_survives(std::uint64_t r, unsigned k) {
  unsigned __int128 x = r;
  unsigned __int128 pow3 = 1;
  for (unsigned j = 1; j <= k; ++j) {
    if (x & 1) {
      x = (3 * x + 1) / 2;
      pow3 *= 3;
    } else {
      x /= 2;
    }
    if (pow3 < (static_cast<unsigned __int128>(1) << j)) return false;
  }
  return true;
}

std::vector<std::uint64_t> residues(const collatz::SieveLevel& level) {
  std::vector<std::uint64_t> out;
  for (const auto& s : level.survivors) out.push_back(s.residue);
  return out;
}

}  // namespace

TEST_CASE("survives") {
  CHECK(collatz::survives(3, 2));
  CHECK_FALSE(collatz::survives(1, 2));
  CHECK_FALSE(collatz::survives(6, 3));
  CHECK_FALSE(collatz::survives(0, 1));
  CHECK(collatz::survives(1, 1));
  CHECK_THROWS_AS(collatz::survives(4, 2), std::out_of_range);
  CHECK_THROWS_AS(collatz::survives(0, 64), std::out_of_range);
}

TEST_CASE("sieve_level examples") {
  CHECK(residues(collatz::sieve_level(2)) == std::vector<std::uint64_t>{3});
  CHECK(residues(collatz::sieve_level(5)) == std::vector<std::uint64_t>{7, 15, 27, 31});
  CHECK(collatz::sieve_level(7).survivors.size() == 13);
}

TEST_CASE("sieve_counts matches the survivor table") {
  const std::vector<collatz::SieveCount> expected = {
      {1, 1}, {2, 1}, {3, 2}, {4, 3}, {5, 4}, {6, 8}, {7, 13}, {8, 19}, {9, 38}, {10, 64}};
  CHECK(collatz::sieve_counts(10) == expected);

  const auto counts = collatz::sieve_counts(28);
  CHECK(counts[24].second == 573162);
  CHECK(counts[25].second == 1037374);
  CHECK(counts[26].second == 1762293);
  CHECK(counts[27].second == 3524586);
  CHECK(counts[27].second == 2 * counts[26].second);
}

TEST_CASE("incremental sieve equals brute-force filter for k <= 14") {
  collatz::SieveLevel level = collatz::sieve_root();
  for (unsigned k = 1; k <= 14; ++k) {
    level = collatz::sieve_next(level);
    std::vector<std::uint64_t> brute;
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
      if (brute_survives(r, k)) brute.push_back(r);
    }
    REQUIRE(residues(level) == brute);
    if (k <= 10) {
      std::vector<std::uint64_t> via_prefixes;
      for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
        if (collatz::survives(r, k)) via_prefixes.push_back(r);
      }
      REQUIRE(via_prefixes == brute);
    }
  }
}

TEST_CASE("survivor state invariants") {
  collatz::SieveLevel level = collatz::sieve_root();
  std::vector<std::uint64_t> previous = residues(level);
  for (unsigned k = 1; k <= 16; ++k) {
    level = collatz::sieve_next(level);
    CHECK(level.k == k);
    const std::uint64_t modulus = std::uint64_t{1} << k;
    std::uint64_t last = 0;
    for (std::size_t i = 0; i < level.survivors.size(); ++i) {
      const auto& s = level.survivors[i];
      REQUIRE(s.residue < modulus);
      if (i > 0) REQUIRE(s.residue > last);
      last = s.residue;
      REQUIRE((s.residue & 1) == 1);
      if (k >= 2) REQUIRE(s.residue % 4 == 3);
      // Child-sum: the parent class survived one level up.
      const std::uint64_t parent = s.residue % (modulus >> 1);
      REQUIRE(std::binary_search(previous.begin(), previous.end(), parent));
      const auto pol = collatz::poly_direct(collatz::Natural(static_cast<unsigned long>(s.residue)), k);
      REQUIRE(collatz::odd_steps(pol) == static_cast<long>(s.odd_count));
      REQUIRE(collatz::affine_eval_checked(pol, collatz::Natural(static_cast<unsigned long>(s.residue))) ==
              collatz::Natural(static_cast<unsigned long>(s.iterate)));
    }
    previous = residues(level);
  }
}

TEST_CASE("sieve limits") {
  collatz::SieveLimits tight;
  tight.max_states = 10;
  CHECK_THROWS_AS(collatz::sieve_level(12, tight), collatz::SieveResourceError);
  CHECK_THROWS_AS(collatz::sieve_level(31), std::out_of_range);
  collatz::SieveLimits wide;
  wide.k_max = 100;
  CHECK_THROWS_AS(collatz::sieve_level(collatz::kSieveHardKMax + 1, wide), std::out_of_range);
}

TEST_CASE("sieve_counts streams levels to the callback") {
  std::vector<unsigned> seen;
  collatz::sieve_counts(6, {}, [&](const collatz::SieveLevel& level) {
    seen.push_back(level.k);
    if (level.k == 5) CHECK(residues(level) == std::vector<std::uint64_t>{7, 15, 27, 31});
  });
  CHECK(seen == std::vector<unsigned>{1, 2, 3, 4, 5, 6});
}
