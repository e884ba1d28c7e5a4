#include "collatz/affine.hpp"

#include <string>

namespace collatz {

namespace {

std::uint64_t low_bits(const Natural& r, unsigned k) {
  Natural reduced;
  mpz_fdiv_r_2exp(reduced.get_mpz_t(), r.get_mpz_t(), k);
  return mpz_get_ui(reduced.get_mpz_t());
}

Natural mod_pow2(const Natural& r, std::uint64_t k) {
  Natural reduced;
  mpz_fdiv_r_2exp(reduced.get_mpz_t(), r.get_mpz_t(), k);
  return reduced;
}

AffineStep poly_fast_reduced(const Natural& r, std::uint64_t k,
                             const BaseTable& table) {
  if (k <= table.depth()) {
    return table.at(static_cast<unsigned>(k), low_bits(r, static_cast<unsigned>(k)));
  }
  const std::uint64_t t1 = k / 2;
  const std::uint64_t t2 = k - t1;
  AffineStep low = poly_fast_reduced(mod_pow2(r, t1), t1, table);
  // T^{t1}(r) picks the class of the remaining t2 iterations.
  const Natural image = affine_eval(low, r);
  AffineStep high = poly_fast_reduced(mod_pow2(image, t2), t2, table);
  return affine_compose(high, low);
}

}  // namespace

long odd_steps(const AffineStep& p) {
  if (p.a <= 0) return -1;
  Natural rest;
  const auto o = mpz_remove(rest.get_mpz_t(), p.a.get_mpz_t(), Natural(3).get_mpz_t());
  return rest == 1 ? static_cast<long>(o) : -1;
}

bool is_well_formed(const AffineStep& p) {
  const long o = odd_steps(p);
  if (o < 0 || static_cast<std::uint64_t>(o) > p.c) return false;
  if (p.b < 0) return false;
  return p.b < (p.a << p.c);
}

Natural affine_eval_checked(const AffineStep& p, const Natural& x) {
  Natural numerator = p.a * x + p.b;
  if (mpz_sgn(numerator.get_mpz_t()) != 0 &&
      mpz_scan1(numerator.get_mpz_t(), 0) < p.c) {
    throw ContractViolation("affine_eval: a*x + b is not divisible by 2^" +
                            std::to_string(p.c));
  }
  Natural result;
  mpz_tdiv_q_2exp(result.get_mpz_t(), numerator.get_mpz_t(), p.c);
  return result;
}

Natural affine_eval(const AffineStep& p, const Natural& x) {
#ifdef COLLATZ_CHECK_CONTRACTS
  return affine_eval_checked(p, x);
#else
  Natural result = p.a * x + p.b;
  mpz_tdiv_q_2exp(result.get_mpz_t(), result.get_mpz_t(), p.c);
  return result;
#endif
}

AffineStep affine_compose(const AffineStep& p, const AffineStep& q) {
  AffineStep out;
  out.a = p.a * q.a;
  out.b = p.a * q.b + (p.b << q.c);
  out.c = p.c + q.c;
  return out;
}

AffineStep poly_direct(const Natural& r, std::uint64_t k) {
  static const AffineStep kOddStep{3, 1, 1};
  Natural rep = mod_pow2(r, k);
  AffineStep pol;
  for (std::uint64_t j = 0; j < k; ++j) {
    if (mpz_even_p(rep.get_mpz_t())) {
      rep >>= 1;
      pol.c += 1;
    } else {
      rep = (3 * rep + 1) >> 1;
      pol = affine_compose(kOddStep, pol);
    }
  }
  return pol;
}

BaseTable::BaseTable(unsigned depth) : depth_(depth) {
  if (depth < 1 || depth > kMaxCacheDepth) {
    throw std::out_of_range("cache depth must lie in [1, " +
                            std::to_string(kMaxCacheDepth) + "], got " +
                            std::to_string(depth));
  }
  levels_.resize(depth);
  for (unsigned k = 1; k <= depth; ++k) {
    auto& level = levels_[k - 1];
    level.reserve(std::size_t{1} << k);
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
      level.push_back(poly_direct(Natural(static_cast<unsigned long>(r)), k));
    }
  }
}

std::size_t BaseTable::size() const {
  std::size_t total = 0;
  for (const auto& level : levels_) total += level.size();
  return total;
}

const AffineStep& BaseTable::at(unsigned k, std::uint64_t r) const {
  if (k < 1 || k > depth_) throw std::out_of_range("BaseTable::at: level out of range");
  return levels_[k - 1].at(r);
}

AffineStep& BaseTable::mutable_entry(unsigned k, std::uint64_t r) {
  if (k < 1 || k > depth_) throw std::out_of_range("BaseTable::mutable_entry: level out of range");
  return levels_[k - 1].at(r);
}

const BaseTable& default_base_table() {
  static const BaseTable table(kDefaultCacheDepth);
  return table;
}

AffineStep poly_fast(const Natural& r, std::uint64_t k, const BaseTable& table) {
  if (k == 0) return AffineStep::identity();
  return poly_fast_reduced(mod_pow2(r, k), k, table);
}

}  // namespace collatz
