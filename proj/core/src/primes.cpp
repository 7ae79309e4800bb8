#include "gapmatch/primes.hpp"
#include "gapmatch/uint128.hpp"

#include <cmath>

#include "gapmatch/errors.hpp"

namespace gapmatch {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % q);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = mulmod(r, a, q);
    a = mulmod(a, a, q);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kSmall) {
    if (x == p) return true;
    if (x % p == 0) return false;
  }
  std::uint64_t d = x - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kSmall) {
    std::uint64_t y = powmod(a, d, x);
    if (y == 1 || y == x - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      y = mulmod(y, y, x);
      if (y == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(std::uint64_t lo, std::uint64_t hi, Rng& rng) {
  require(lo >= 2, "random_prime: need lo >= 2");
  require(hi > lo, "random_prime: need hi > lo");
  // Prime gaps below 2^64 are far shorter than 2^20, so only short ranges
  // need an explicit existence scan.
  if (hi - lo <= (std::uint64_t{1} << 20)) {
    bool any = false;
    for (std::uint64_t x = lo; x < hi && !any; ++x) any = is_prime(x);
    if (!any) throw PreconditionError("random_prime: empty prime range");
  }
  for (;;) {
    const std::uint64_t x = rng.range(lo, hi);
    if (is_prime(x)) return x;
  }
}

ModulusChoice choose_modulus(double base, int exponent, std::uint64_t sigma, Rng& rng) {
  ModulusChoice out;
  const double log2_hi = exponent * std::log2(std::max(base, 1.0)) + 1.0;
  if (log2_hi > 61.0) {
    out.q = kLargePrime;
    out.substituted = true;
    out.note = "modulus interval [" + std::to_string(base) + "^" + std::to_string(exponent) +
               ", 2x] exceeds 2^61; fixed prime 2^62-57 used";
    require(sigma < out.q, "choose_modulus: alphabet exceeds the fixed prime");
    return out;
  }
  std::uint64_t lo = static_cast<std::uint64_t>(std::ceil(std::pow(std::max(base, 1.0), exponent)));
  if (lo <= sigma) lo = sigma + 1;
  if (lo < 3) lo = 3;
  out.q = random_prime(lo, 2 * lo + 1, rng);
  return out;
}

}  // namespace gapmatch
