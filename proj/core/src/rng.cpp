#include "gapmatch/rng.hpp"
#include "gapmatch/uint128.hpp"

#include <cmath>
#include <limits>

namespace gapmatch {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire's multiply-and-reject.
  std::uint64_t x = engine_();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = engine_();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

bool Rng::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return unit() < p;
}

std::uint64_t Rng::geometric(double p) {
  if (p >= 1.0) return 0;
  const double u = 1.0 - unit();  // (0, 1]
  const double g = std::floor(std::log(u) / std::log1p(-p));
  if (!(g < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(g);
}

}  // namespace gapmatch
