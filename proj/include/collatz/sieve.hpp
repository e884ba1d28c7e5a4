#pragma once

// Residue classes mod 2^k whose generic members stay at or above their start
// for each of the first k T-iterations (OEIS A076227 counts these).
//
// A class r mod 2^j shrinks generically after j steps iff the coefficient
// 3^o of C_{j,r} is below 2^j.  A survivor at level k passed that test for
// every prefix j <= k.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace collatz {

struct SurvivorState {
  std::uint64_t residue = 0;
  std::uint32_t odd_count = 0;  // coefficient a = 3^odd_count
  std::uint64_t iterate = 0;    // T^(k)(residue)

  friend bool operator==(const SurvivorState&, const SurvivorState&) = default;
};

struct SieveLevel {
  unsigned k = 0;
  std::vector<SurvivorState> survivors;  // ascending by residue
};

/// Thrown when the next level would exceed the configured state cap.
class SieveResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned kDefaultSieveKMax = 30;
// 2 * 3^k must fit the 64-bit iterate field.
inline constexpr unsigned kSieveHardKMax = 38;

struct SieveLimits {
  unsigned k_max = kDefaultSieveKMax;
  std::size_t max_states = std::size_t{1} << 26;  // about 1.5 GiB of SurvivorState
};

/// Coefficient test against every prefix C_{j, r mod 2^j}, j = 1..k.
/// Requires r < 2^k, k <= 63.
bool survives(std::uint64_t r, unsigned k);

/// Level 0: the single class 0 mod 1.
SieveLevel sieve_root();

/// Children r and r + 2^k of every survivor, filtered on the step k+1 test.
SieveLevel sieve_next(const SieveLevel& level, const SieveLimits& limits = {});

/// All survivors mod 2^k.
SieveLevel sieve_level(unsigned k, const SieveLimits& limits = {});

using SieveCount = std::pair<unsigned, std::uint64_t>;

/// (k, count) for k = 1..k_max.  on_level, if set, sees every level before
/// it is discarded.
std::vector<SieveCount> sieve_counts(
    unsigned k_max, const SieveLimits& limits = {},
    const std::function<void(const SieveLevel&)>& on_level = {});

}  // namespace collatz
