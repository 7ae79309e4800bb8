#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gapmatch {

using Symbol = std::uint64_t;
using SymbolSeq = std::vector<Symbol>;
using SymbolView = std::span<const Symbol>;
using PositionSet = std::vector<std::size_t>;  // sorted, distinct
using MismatchSet = PositionSet;

// A pattern-matching instance with mismatch thresholds 0 <= kprime < k < m <= n.
struct Instance {
  SymbolSeq pattern;
  SymbolSeq text;
  std::uint64_t sigma = 2;
  std::size_t k = 1;
  std::size_t kprime = 0;

  std::size_t m() const { return pattern.size(); }
  std::size_t n() const { return text.size(); }
  std::size_t delta() const { return text.size() - pattern.size() + 1; }

  // Throws PreconditionError on any broken invariant.
  void validate() const;
  static Instance make(SymbolSeq pattern, SymbolSeq text, std::uint64_t sigma, std::size_t k,
                       std::size_t kprime = 0);
};

std::size_t hamming_distance(SymbolView a, SymbolView b);
MismatchSet mismatch_set(SymbolView pattern, SymbolView window);

// Failure-function matcher; worst-case O(|P| + |T|).
PositionSet occ_exact(SymbolView pattern, SymbolView text);

// Windows with at most `threshold` mismatches, O(nm) scan with early exit.
PositionSet occ_k_bruteforce(const Instance& inst, std::size_t threshold);

// Smallest Hamming distance over all alignments.
std::size_t min_hamming_distance(const Instance& inst);

inline SymbolView window(const SymbolSeq& s, std::size_t start, std::size_t len) {
  return SymbolView(s).subspan(start, len);
}

}  // namespace gapmatch
