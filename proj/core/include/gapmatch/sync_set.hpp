#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gapmatch/rng.hpp"
#include "gapmatch/strings.hpp"

namespace gapmatch {

// tau-synchronizing set: positions in [0..n-2tau] such that
//   (1) equal 2tau-windows agree on membership, and
//   (2) S meets [i..i+tau) unless per(S[i..i+3tau-1)) <= tau/3,
// with |S| <= 30n/tau.
struct SyncSet {
  std::size_t tau = 1;
  PositionSet positions;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
};

// Local-minimizer construction; condition (2) and the size bound are checked
// after each draw and the draw is repeated up to retry_cap times.
SyncSet sync_set(SymbolView s, std::size_t tau, Rng& rng, std::size_t retry_cap = 32);

// flags[j] = 1 iff per(s[j..j+len)) <= max_period, for j in [0..n-len].
std::vector<std::uint8_t> periodic_windows(SymbolView s, std::size_t len, std::size_t max_period);

// Condition (2) and the size bound, O(n tau).
bool sync_density_holds(SymbolView s, std::size_t tau, const PositionSet& positions);

}  // namespace gapmatch
