#pragma once

// Collatz polynomials in triple form: X -> (a*X + b) / 2^c.
//
// C_{k,r} is the affine map that agrees with k iterations of the T-function
// on every n = r (mod 2^k).  Composition of two such maps is again of the
// same shape, which lets k iterations be assembled by binary splitting from
// a small table of short maps.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace collatz {

using Natural = mpz_class;

/// Raised when a map is applied outside the residue class it was built for.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct AffineStep {
  Natural a{1};
  Natural b{0};
  std::uint64_t c = 0;

  static AffineStep identity() { return {}; }

  friend bool operator==(const AffineStep& lhs, const AffineStep& rhs) {
    return lhs.c == rhs.c && lhs.a == rhs.a && lhs.b == rhs.b;
  }
};

/// Number of odd steps o, i.e. a = 3^o; -1 if a is not a power of three.
long odd_steps(const AffineStep& p);

/// Checks a = 3^o with o <= c and 0 <= b < a * 2^c.
bool is_well_formed(const AffineStep& p);

/// (a*x + b) >> c, always checking that the shift is exact.
Natural affine_eval_checked(const AffineStep& p, const Natural& x);

/// (a*x + b) >> c.  The divisibility check runs only when
/// COLLATZ_CHECK_CONTRACTS is enabled (debug and test builds).
Natural affine_eval(const AffineStep& p, const Natural& x);

/// p o q, i.e. X -> p(q(X)).
AffineStep affine_compose(const AffineStep& p, const AffineStep& q);

/// C_{k,r} built one T-iteration at a time.  Only r mod 2^k matters.
AffineStep poly_direct(const Natural& r, std::uint64_t k);

inline constexpr unsigned kDefaultCacheDepth = 8;
inline constexpr unsigned kMaxCacheDepth = 16;

/// All C_{k,r} for 1 <= k <= depth and 0 <= r < 2^k.
class BaseTable {
 public:
  explicit BaseTable(unsigned depth = kDefaultCacheDepth);

  unsigned depth() const { return depth_; }
  std::size_t size() const;

  const AffineStep& at(unsigned k, std::uint64_t r) const;

  // Test hook: lets fault-injection tests corrupt an entry.
  AffineStep& mutable_entry(unsigned k, std::uint64_t r);

 private:
  unsigned depth_;
  std::vector<std::vector<AffineStep>> levels_;  // levels_[k-1][r]
};

/// Shared read-only table of depth kDefaultCacheDepth, built on first use.
const BaseTable& default_base_table();

/// C_{k,r} by recursive halving k = floor(k/2) + ceil(k/2), falling back to
/// the table once k <= table.depth().  Equal to poly_direct(r mod 2^k, k).
AffineStep poly_fast(const Natural& r, std::uint64_t k,
                     const BaseTable& table = default_base_table());

}  // namespace collatz
