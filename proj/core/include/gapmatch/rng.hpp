#pragma once

#include <cstdint>
#include <random>

namespace gapmatch {

std::uint64_t splitmix64(std::uint64_t x);

// Child seed for the index-th independent stream of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Explicit randomness source. Every distribution is computed from raw 64-bit
// engine output, so streams are identical across standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

  // Uniform in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi); hi > lo.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo); }
  // Uniform in [0, 1) with 53 random bits.
  double unit();
  bool bernoulli(double p);
  // Failures before the first success of a Bernoulli(p) sequence, p in (0, 1].
  std::uint64_t geometric(double p);
  // Fresh independent generator seeded from this stream.
  Rng split() { return Rng(engine_()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gapmatch
