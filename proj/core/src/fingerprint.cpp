#include "gapmatch/fingerprint.hpp"

#include "gapmatch/errors.hpp"
#include "gapmatch/primes.hpp"

namespace gapmatch {

Montgomery::Montgomery(std::uint64_t q) : q_(q) {
  require(q >= 3 && (q & 1) && q < (std::uint64_t{1} << 63), "Montgomery: need odd 3 <= q < 2^63");
  std::uint64_t inv = q;  // correct to 3 bits; each Newton step doubles that
  for (int i = 0; i < 5; ++i) inv *= 2 - q * inv;
  nqinv_ = 0 - inv;
  const std::uint64_t r = (0 - q) % q;  // 2^64 mod q
  r2_ = mulmod(r, r, q);
}

FingerprintFn::FingerprintFn(std::uint64_t x, std::uint64_t q, std::size_t max_len)
    : ar_(q), x_(x), max_len_(max_len) {
  require(x >= 1 && x < q, "FingerprintFn: need 1 <= x < q");
  pow_x_ = powmod(x, max_len, q);
  inv_x_ = powmod(x, q - 2, q);
  x_mont_ = ar_.to(x);
  inv_x_mont_ = ar_.to(inv_x_);
  one_mont_ = ar_.to(1);
}

FingerprintFn FingerprintFn::random(std::uint64_t q, std::size_t max_len, Rng& rng) {
  return FingerprintFn(rng.range(1, q), q, max_len);
}

std::uint64_t fp_eval(const FingerprintFn& f, SymbolView s) {
  require(s.size() <= f.max_len(), "fp_eval: string longer than max_len");
  const Montgomery& ar = f.arith();
  std::uint64_t value = 0;
  std::uint64_t pw = f.one_mont();
  for (Symbol c : s) {
    require(c < f.q(), "fp_eval: symbol >= q");
    value = ar.add(value, ar.mul(c, pw));
    pw = ar.mul(pw, f.x_mont());
  }
  return value;
}

void SlidingFingerprint::extend_right(Symbol s) {
  require(s < f_->q(), "extend_right: symbol >= q");
  require(length_ < f_->max_len(), "extend_right: window would exceed max_len");
  const Montgomery& ar = f_->arith();
  value_ = ar.add(value_, ar.mul(s, top_));
  top_ = ar.mul(top_, f_->x_mont());
  ++length_;
}

void SlidingFingerprint::drop_left(Symbol leftmost) {
  require(length_ >= 1, "drop_left: empty window");
  require(leftmost < f_->q(), "drop_left: symbol >= q");
  const Montgomery& ar = f_->arith();
  value_ = ar.mul(ar.sub(value_, leftmost), f_->inv_x_mont());
  top_ = ar.mul(top_, f_->inv_x_mont());
  --length_;
}

SlidingFingerprint fp_extend_right(SlidingFingerprint st, Symbol new_symbol) {
  st.extend_right(new_symbol);
  return st;
}

SlidingFingerprint fp_drop_left(SlidingFingerprint st, Symbol old_leftmost_symbol) {
  st.drop_left(old_leftmost_symbol);
  return st;
}

}  // namespace gapmatch
