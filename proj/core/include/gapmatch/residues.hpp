#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gapmatch/rng.hpp"
#include "gapmatch/strings.hpp"

namespace gapmatch {

// B subset of Z_p, each residue kept independently with probability beta.
struct ResidueSample {
  std::uint64_t p = 1;
  double beta = 0.0;
  std::vector<std::uint64_t> members;  // sorted, distinct, < p

  bool contains(std::uint64_t r) const;
};

// Geometric skipping over Z_p; for beta > 1/2 the complement is skipped instead.
ResidueSample sample_residues(std::uint64_t p, double beta, Rng& rng);

// Residue image {a mod p}, sorted and deduplicated.
std::vector<std::uint64_t> mod_project(const PositionSet& positions, std::uint64_t p);

// Membership of B for the integers of [lo, hi). When hi - lo < p the integers
// map to distinct residues, so only those residues are drawn; otherwise B is
// drawn over all of Z_p. Either way each residue is an independent
// Bernoulli(beta) trial.
class ResidueWindow {
 public:
  ResidueWindow() = default;
  static ResidueWindow draw(std::uint64_t p, double beta, std::int64_t lo, std::int64_t hi, Rng& rng);

  std::uint64_t p() const { return p_; }
  double beta() const { return beta_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  bool covers_all_residues() const { return full_; }

  // t in [lo, hi).
  bool contains(std::int64_t t) const {
    if (full_) {
      std::int64_t r = t % static_cast<std::int64_t>(p_);
      if (r < 0) r += static_cast<std::int64_t>(p_);
      return bits_[static_cast<std::size_t>(r)] != 0;
    }
    return bits_[static_cast<std::size_t>(t - lo_)] != 0;
  }
  // Sorted t in [lo, hi) with t mod p in B.
  std::vector<std::int64_t> members() const;

 private:
  std::uint64_t p_ = 1;
  double beta_ = 0.0;
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
  bool full_ = false;
  std::vector<std::uint8_t> bits_;
};

}  // namespace gapmatch
