#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gapmatch/rng.hpp"
#include "gapmatch/strings.hpp"

namespace gapmatch {

struct ContainerConfig {
  double c_fallback = 8.0;   // full set when k log2^2 n >= c_fallback m
  double c_prime = 4.0;      // p_hat = c_prime k ceil(log2 n)
  double c_size = 64.0;      // logged one-mismatch budget c_size (n/m) log2(2n/m)
  std::size_t retry_cap = 16;
  std::size_t sync_retry_cap = 32;
};

struct CoverageViolation {
  std::size_t i;
  std::size_t covered;
  std::size_t required;
};

struct CoverageCertificate {
  std::size_t threshold = 0;
  bool pass = false;
  std::vector<CoverageViolation> violations;
};

struct ContainerSet {
  PositionSet positions;  // sorted subset of [0..n)
  std::size_t n = 0;
  double budget = 0.0;    // size bound the construction is measured against
  bool fallback = false;  // built as the full range
  std::size_t draws = 0;
  std::size_t redraws = 0;
  std::optional<CoverageCertificate> verified;
};

struct Run {
  std::size_t start;
  std::size_t end;  // exclusive
  std::size_t period;
  bool operator==(const Run&) const = default;
};

// Maximal fragments of length >= 3tau-1 whose shortest period is <= tau/3.
std::vector<Run> tau_runs(SymbolView s, std::size_t tau);

// Positions i+d (reversed: i-1-d) for each light edge at depth d on the trie
// path of every start i. Out-of-range positions (sentinel edges) are dropped.
PositionSet light_positions(SymbolView s, const PositionSet& starts, bool reversed);

ContainerSet one_mismatch_container(SymbolView s, std::size_t m, Rng& rng, const ContainerConfig& cfg = {});
ContainerSet k_mismatch_container(SymbolView s, std::size_t m, std::size_t k, Rng& rng,
                                  const ContainerConfig& cfg = {});
ContainerSet container_below(SymbolView s, std::size_t m, std::size_t k, Rng& rng,
                             const ContainerConfig& cfg = {});
ContainerSet container_above(SymbolView s, std::size_t m, std::size_t k, Rng& rng,
                             const ContainerConfig& cfg = {});
ContainerSet mismatch_container(const Instance& inst, std::size_t k, Rng& rng, const ContainerConfig& cfg = {});

// Every pair of windows at distance <= k has all mismatches in (M-i) u (M-j).
bool pairs_fully_covered(SymbolView s, std::size_t m, std::size_t k, const PositionSet& positions);
// Every pair of windows has >= min(k, HD) mismatches in (M-i) u (M-j).
bool pairs_capped_covered(SymbolView s, std::size_t m, std::size_t k, const PositionSet& positions);

// |MM(P, T[i..i+m)) n (M u (M-i))| >= min(threshold, HD) for all i.
CoverageCertificate verify_container(const Instance& inst, const PositionSet& positions, std::size_t threshold);
// Split form: mismatch j is covered when j in pattern_part or i+j in text_part.
CoverageCertificate verify_container(const Instance& inst, const PositionSet& pattern_part,
                                     const PositionSet& text_part, std::size_t threshold);

// Container size bound 8 (n/m) k log2^4 n.
double container_size_bound(std::size_t n, std::size_t m, std::size_t k);
// |M| m / (n k log2^4 n).
double container_ratio(std::size_t size, std::size_t n, std::size_t m, std::size_t k);

struct ContainerHeader {
  std::size_t n = 0, m = 0, k = 0;
  std::uint64_t seed = 0;
};
void write_container(std::ostream& out, const PositionSet& positions, const ContainerHeader& h);
PositionSet read_container(std::istream& in, ContainerHeader* h = nullptr);

}  // namespace gapmatch
