#pragma once

#include <cstddef>
#include <cstdint>

#include "gapmatch/rng.hpp"
#include "gapmatch/strings.hpp"
#include "gapmatch/uint128.hpp"

namespace gapmatch {

// Montgomery arithmetic modulo an odd q < 2^63. mul(a, b) = a*b/R mod q with
// R = 2^64; inputs and outputs are reduced residues.
class Montgomery {
 public:
  explicit Montgomery(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    const u128 t = static_cast<u128>(a) * b;
    const std::uint64_t m = static_cast<std::uint64_t>(t) * nqinv_;
    const u128 u = t + static_cast<u128>(m) * q_;
    std::uint64_t r = static_cast<std::uint64_t>(u >> 64);
    return r >= q_ ? r - q_ : r;
  }
  std::uint64_t to(std::uint64_t a) const { return mul(a % q_, r2_); }
  std::uint64_t from(std::uint64_t a) const { return mul(a, 1); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + q_ - b; }

 private:
  std::uint64_t q_;
  std::uint64_t nqinv_;  // -q^{-1} mod 2^64
  std::uint64_t r2_;     // R^2 mod q
};

// Karp-Rabin evaluation context F(S) = sum S[i] x^i mod q, q an odd prime.
class FingerprintFn {
 public:
  FingerprintFn(std::uint64_t x, std::uint64_t q, std::size_t max_len);
  static FingerprintFn random(std::uint64_t q, std::size_t max_len, Rng& rng);

  std::uint64_t x() const { return x_; }
  std::uint64_t q() const { return ar_.modulus(); }
  std::size_t max_len() const { return max_len_; }
  std::uint64_t pow_x() const { return pow_x_; }  // x^max_len
  std::uint64_t inv_x() const { return inv_x_; }

  const Montgomery& arith() const { return ar_; }
  std::uint64_t x_mont() const { return x_mont_; }
  std::uint64_t inv_x_mont() const { return inv_x_mont_; }
  std::uint64_t one_mont() const { return one_mont_; }

 private:
  Montgomery ar_;
  std::uint64_t x_;
  std::size_t max_len_;
  std::uint64_t pow_x_;
  std::uint64_t inv_x_;
  std::uint64_t x_mont_;
  std::uint64_t inv_x_mont_;
  std::uint64_t one_mont_;
};

std::uint64_t fp_eval(const FingerprintFn& f, SymbolView s);

// Window fingerprint under O(1) updates. value() is always a plain residue.
class SlidingFingerprint {
 public:
  explicit SlidingFingerprint(const FingerprintFn& f) : f_(&f), top_(f.one_mont()) {}

  std::uint64_t value() const { return value_; }
  std::size_t length() const { return length_; }
  const FingerprintFn& owner() const { return *f_; }

  void extend_right(Symbol s);
  void drop_left(Symbol leftmost);
  void clear() {
    value_ = 0;
    length_ = 0;
    top_ = f_->one_mont();
  }

 private:
  const FingerprintFn* f_;
  std::uint64_t value_ = 0;
  std::size_t length_ = 0;
  std::uint64_t top_;  // x^length in Montgomery form
};

SlidingFingerprint fp_extend_right(SlidingFingerprint st, Symbol new_symbol);
SlidingFingerprint fp_drop_left(SlidingFingerprint st, Symbol old_leftmost_symbol);

}  // namespace gapmatch
