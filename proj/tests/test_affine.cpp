#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "collatz/affine.hpp"

using collatz::AffineStep;
using collatz::Natural;

namespace {

Natural nat(std::uint64_t v) { return Natural(static_cast<unsigned long>(v)); }

AffineStep step(unsigned long a, unsigned long b, std::uint64_t c) {
  return AffineStep{Natural(a), Natural(b), c};
}

// Independent of the library: plain T-function iteration.
Natural iterate_t(Natural x, std::uint64_t k) {
  for (std::uint64_t i = 0; i < k; ++i) {
    if (mpz_even_p(x.get_mpz_t())) x /= 2;
    else x = (3 * x + 1) / 2;
  }
  return x;
}

Natural random_natural(std::mt19937_64& rng, unsigned bits) {
  Natural x = 0;
  for (unsigned done = 0; done < bits; done += 64) {
    x = (x << 64) + Natural(static_cast<unsigned long>(rng()));
  }
  return x >> ((bits + 63) / 64 * 64 - bits);
}

}  // namespace

TEST_CASE("affine_eval examples") {
  CHECK(collatz::affine_eval(step(9, 5, 2), 3) == 8);
  CHECK(collatz::affine_eval(AffineStep::identity(), nat(123456789)) == 123456789);
  CHECK(collatz::affine_eval(step(243, 211, 5), 31) == iterate_t(31, 5));
  CHECK(collatz::affine_eval(step(243, 211, 5), 31) == 242);
}

TEST_CASE("affine_eval_checked rejects the wrong residue class") {
  // C_{2,3} applied to x = 1: 9 + 5 = 14 is not divisible by 4.
  CHECK_THROWS_AS(collatz::affine_eval_checked(step(9, 5, 2), 1), collatz::ContractViolation);
  CHECK(collatz::affine_eval_checked(step(9, 5, 2), 7) == 17);
}

TEST_CASE("affine_compose examples") {
  CHECK(collatz::affine_compose(step(3, 1, 1), step(1, 0, 1)) == step(3, 2, 2));
  const AffineStep q = step(81, 65, 5);
  CHECK(collatz::affine_compose(AffineStep::identity(), q) == q);
  CHECK(collatz::affine_compose(q, AffineStep::identity()) == q);
}

TEST_CASE("affine_compose is associative") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    AffineStep maps[3];
    for (auto& m : maps) {
      m.c = rng() % 40;
      mpz_ui_pow_ui(m.a.get_mpz_t(), 3, rng() % (m.c + 1));
      m.b = random_natural(rng, 128) % (m.a << m.c);
    }
    const auto left = collatz::affine_compose(collatz::affine_compose(maps[0], maps[1]), maps[2]);
    const auto right = collatz::affine_compose(maps[0], collatz::affine_compose(maps[1], maps[2]));
    REQUIRE(left == right);
  }
}

TEST_CASE("printed polynomials for k = 2 and k = 5") {
  const AffineStep k2[] = {step(1, 0, 2), step(3, 1, 2), step(3, 2, 2), step(9, 5, 2)};
  for (unsigned r = 0; r < 4; ++r) {
    CHECK(collatz::poly_direct(r, 2) == k2[r]);
    CHECK(collatz::poly_fast(r, 2) == k2[r]);
  }
  const std::pair<unsigned, AffineStep> k5[] = {
      {3, step(9, 5, 5)},     {7, step(81, 73, 5)},   {11, step(27, 23, 5)},
      {15, step(81, 65, 5)},  {19, step(27, 31, 5)},  {23, step(27, 19, 5)},
      {27, step(81, 85, 5)},  {31, step(243, 211, 5)}};
  for (const auto& [r, expected] : k5) {
    CAPTURE(r);
    CHECK(collatz::poly_direct(r, 5) == expected);
    CHECK(collatz::poly_fast(r, 5) == expected);
    CHECK(collatz::poly_fast(r, 5, collatz::BaseTable(1)) == expected);
  }
}

TEST_CASE("poly_direct edge cases") {
  CHECK(collatz::poly_direct(0, 6) == step(1, 0, 6));
  CHECK(collatz::poly_direct(12345, 0) == AffineStep::identity());
  // Only r mod 2^k matters.
  CHECK(collatz::poly_direct(3 + 4 * 1000, 2) == step(9, 5, 2));
  CHECK(collatz::poly_fast(27 + 32 * 77, 5) == step(81, 85, 5));
}

TEST_CASE("exactness and divisibility for k <= 12") {
  std::mt19937_64 rng(12);
  for (std::uint64_t k = 1; k <= 12; ++k) {
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
      const AffineStep p = collatz::poly_direct(nat(r), k);
      REQUIRE(p.c == k);
      REQUIRE(collatz::is_well_formed(p));
      for (int i = 0; i < 100; ++i) {
        const Natural x = nat(r) + (random_natural(rng, 70) << k);
        const Natural numerator = p.a * x + p.b;
        REQUIRE(mpz_divisible_2exp_p(numerator.get_mpz_t(), k));
        REQUIRE(collatz::affine_eval_checked(p, x) == iterate_t(x, k));
      }
    }
  }
}

TEST_CASE("composition law holds exhaustively for k, l <= 6") {
  for (std::uint64_t k = 1; k <= 6; ++k) {
    for (std::uint64_t l = 1; l <= 6; ++l) {
      for (std::uint64_t r = 0; r < (std::uint64_t{1} << (k + l)); ++r) {
        const AffineStep low = collatz::poly_direct(nat(r), l);
        Natural image = collatz::affine_eval_checked(low, nat(r));
        mpz_fdiv_r_2exp(image.get_mpz_t(), image.get_mpz_t(), k);
        const AffineStep composed = collatz::affine_compose(collatz::poly_direct(image, k), low);
        REQUIRE(composed == collatz::poly_direct(nat(r), k + l));
      }
    }
  }
}

TEST_CASE("poly_fast equals poly_direct exhaustively for k <= 12") {
  for (unsigned depth : {1u, 3u, 8u}) {
    const collatz::BaseTable table(depth);
    for (std::uint64_t k = 1; k <= 12; ++k) {
      for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
        REQUIRE(collatz::poly_fast(nat(r), k, table) == collatz::poly_direct(nat(r), k));
      }
    }
  }
}

TEST_CASE("poly_fast equals poly_direct on random (r, k)") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t k = 1 + rng() % 2000;
    const Natural r = random_natural(rng, static_cast<unsigned>(k + 64));
    const AffineStep fast = collatz::poly_fast(r, k);
    REQUIRE(collatz::is_well_formed(fast));
    REQUIRE(fast == collatz::poly_direct(r, k));
  }
  for (std::uint64_t k : {2999u, 3500u, 4000u}) {
    const Natural r = random_natural(rng, 4100);
    REQUIRE(collatz::poly_fast(r, k) == collatz::poly_direct(r, k));
  }
}

TEST_CASE("base table") {
  const collatz::BaseTable one(1);
  CHECK(one.at(1, 0) == step(1, 0, 1));
  CHECK(one.at(1, 1) == step(3, 1, 1));

  const collatz::BaseTable two(2);
  CHECK(two.at(2, 0) == step(1, 0, 2));
  CHECK(two.at(2, 1) == step(3, 1, 2));
  CHECK(two.at(2, 2) == step(3, 2, 2));
  CHECK(two.at(2, 3) == step(9, 5, 2));

  const collatz::BaseTable eight(8);
  CHECK(eight.size() == 510);
  for (unsigned k = 1; k <= 8; ++k) {
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
      REQUIRE(eight.at(k, r) == collatz::poly_direct(nat(r), k));
    }
  }
  CHECK(&collatz::default_base_table() == &collatz::default_base_table());
  CHECK(collatz::default_base_table().depth() == collatz::kDefaultCacheDepth);

  CHECK_THROWS_AS(collatz::BaseTable(0), std::out_of_range);
  CHECK_THROWS_AS(collatz::BaseTable(17), std::out_of_range);
  CHECK_THROWS_AS(eight.at(9, 0), std::out_of_range);
}

TEST_CASE("is_well_formed rejects broken triples") {
  CHECK(collatz::is_well_formed(AffineStep::identity()));
  CHECK_FALSE(collatz::is_well_formed(step(2, 0, 3)));   // not a power of 3
  CHECK_FALSE(collatz::is_well_formed(step(27, 0, 2)));  // o > c
  CHECK_FALSE(collatz::is_well_formed(step(3, 6, 1)));   // b >= a * 2^c
  CHECK(collatz::odd_steps(step(243, 211, 5)) == 5);
}
