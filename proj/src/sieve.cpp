#include "collatz/sieve.hpp"

#include <array>
#include <string>

#include "collatz/affine.hpp"

namespace collatz {

namespace {

constexpr std::array<std::uint64_t, kSieveHardKMax + 2> make_pow3() {
  std::array<std::uint64_t, kSieveHardKMax + 2> p{};
  p[0] = 1;
  for (std::size_t i = 1; i < p.size(); ++i) p[i] = 3 * p[i - 1];
  return p;
}

constexpr auto kPow3 = make_pow3();

// 3^o >= 2^j, evaluated without overflow for j <= 64.
bool coefficient_holds(std::uint32_t odd_count, unsigned j) {
  if (j >= 64) return false;  // unreachable for k <= kSieveHardKMax
  return kPow3[odd_count] >= (std::uint64_t{1} << j);
}

void check_level(unsigned k, const SieveLimits& limits) {
  const unsigned cap = limits.k_max < kSieveHardKMax ? limits.k_max : kSieveHardKMax;
  if (k > cap) {
    throw std::out_of_range("sieve level " + std::to_string(k) +
                            " exceeds k_max " + std::to_string(cap));
  }
}

}  // namespace

bool survives(std::uint64_t r, unsigned k) {
  if (k > 63 || r >= (std::uint64_t{1} << k)) {
    throw std::out_of_range("survives: need k <= 63 and r < 2^k");
  }
  static const AffineStep kOddStep{3, 1, 1};
  static const AffineStep kEvenStep{1, 0, 1};
  // Walk the prefixes C_{1,r}, C_{2,r}, ... of poly_direct(r, k).
  AffineStep prefix;
  Natural rep(static_cast<unsigned long>(r));
  for (unsigned j = 1; j <= k; ++j) {
    if (mpz_even_p(rep.get_mpz_t())) {
      rep >>= 1;
      prefix = affine_compose(kEvenStep, prefix);
    } else {
      rep = (3 * rep + 1) >> 1;
      prefix = affine_compose(kOddStep, prefix);
    }
    if (prefix.a < (Natural(1) << j)) return false;
  }
  return true;
}

SieveLevel sieve_root() { return SieveLevel{0, {SurvivorState{0, 0, 0}}}; }

SieveLevel sieve_next(const SieveLevel& level, const SieveLimits& limits) {
  check_level(level.k + 1, limits);
  if (2 * level.survivors.size() > limits.max_states) {
    throw SieveResourceError("sieve level " + std::to_string(level.k + 1) +
                             " may hold up to " +
                             std::to_string(2 * level.survivors.size()) +
                             " states, above the cap of " +
                             std::to_string(limits.max_states));
  }
  const unsigned k = level.k;
  const std::uint64_t modulus = std::uint64_t{1} << k;
  const unsigned next_k = k + 1;

  SieveLevel next{next_k, {}};
  next.survivors.reserve(2 * level.survivors.size());

  auto try_child = [&](std::uint64_t residue, std::uint32_t odd, std::uint64_t value,
                       std::vector<SurvivorState>& out) {
    if (value & 1) {
      ++odd;
      value = (3 * value + 1) / 2;
    } else {
      value /= 2;
    }
    if (coefficient_holds(odd, next_k)) out.push_back({residue, odd, value});
  };

  // Children r + 2^k all exceed every r, so emit low children first to keep
  // the level sorted.  T^(k)(r + 2^k) = T^(k)(r) + 3^o.
  for (const auto& s : level.survivors) {
    try_child(s.residue, s.odd_count, s.iterate, next.survivors);
  }
  for (const auto& s : level.survivors) {
    try_child(s.residue + modulus, s.odd_count, s.iterate + kPow3[s.odd_count],
              next.survivors);
  }
  next.survivors.shrink_to_fit();
  return next;
}

SieveLevel sieve_level(unsigned k, const SieveLimits& limits) {
  check_level(k, limits);
  SieveLevel level = sieve_root();
  while (level.k < k) level = sieve_next(level, limits);
  return level;
}

std::vector<SieveCount> sieve_counts(unsigned k_max, const SieveLimits& limits,
                                     const std::function<void(const SieveLevel&)>& on_level) {
  check_level(k_max, limits);
  std::vector<SieveCount> counts;
  counts.reserve(k_max);
  SieveLevel level = sieve_root();
  while (level.k < k_max) {
    level = sieve_next(level, limits);
    counts.emplace_back(level.k, level.survivors.size());
    if (on_level) on_level(level);
  }
  return counts;
}

}  // namespace collatz
