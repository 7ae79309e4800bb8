#pragma once

#include <cstdint>
#include <string>

#include "gapmatch/rng.hpp"

namespace gapmatch {

// Largest prime below 2^62; stands in for moduli too large for a machine word.
inline constexpr std::uint64_t kLargePrime = (std::uint64_t{1} << 62) - 57;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q);

// Deterministic strong-pseudoprime test with a witness set valid below 2^64.
bool is_prime(std::uint64_t x);

// Uniform prime in [lo, hi) by rejection sampling; PreconditionError when the
// range holds no prime.
std::uint64_t random_prime(std::uint64_t lo, std::uint64_t hi, Rng& rng);

struct ModulusChoice {
  std::uint64_t q = 0;
  bool substituted = false;  // true when the requested interval did not fit
  std::string note;
};

// A prime in [base^exponent, 2*base^exponent] and above sigma. When that
// interval passes 2^61 the fixed kLargePrime is used and flagged.
ModulusChoice choose_modulus(double base, int exponent, std::uint64_t sigma, Rng& rng);

}  // namespace gapmatch
