#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapmatch/answer_set.hpp"
#include "gapmatch/query_oracle.hpp"
#include "gapmatch/report.hpp"
#include "gapmatch/rng.hpp"

namespace gapmatch {

enum class FilterBranch : std::uint8_t { Automatic, Brute, Hashed };

struct AdaptiveConfig {
  // Inputs.
  std::size_t n = 0, m = 0, k = 1;
  double c_container = 1.0;
  Profile profile = Profile::Desk;
  double c_phat = 2.0;
  FilterBranch branch = FilterBranch::Automatic;
  bool trace = false;
  std::size_t potential_trials = 4;

  // Derived by derive().
  std::size_t delta = 1;
  double epsilon = 0.0;
  double delta_prob = 0.0;  // delta = epsilon / 16
  std::size_t D = 1;
  std::size_t L = 1;
  std::size_t k0 = 0;

  static AdaptiveConfig derive(std::size_t n, std::size_t m, std::size_t k, double c_container = 1.0,
                               Profile profile = Profile::Desk);
  // Recomputes derived values; keeps branch/trace settings.
  void rederive();
  // True when the filter takes the exact-intersection branch.
  bool brute_branch() const;
  std::vector<std::string> deviations() const;
};

struct BlockDescriptor {
  Side side = Side::Text;
  std::size_t index = 0;
  std::size_t start = 0;  // a
  std::size_t end = 0;    // b, exclusive
  bool verified = false;  // an admissible position was found
  std::size_t attempts = 0;
};

// P0 = P[a0..a0+2delta), T0 = T[a0..a0+3delta-1).
struct FragmentPair {
  std::size_t a0 = 0;
  std::size_t delta = 1;
  BlockDescriptor origin;
};

struct Fragments {
  SymbolSeq p_frag;
  SymbolSeq t_frag;
};
Fragments materialize(const FragmentPair& pair, const Instance& inst);

// a0 = min(m - 2delta, max(a - delta, 0)); requires delta <= 0.2 m.
FragmentPair extract_fragments(const BlockDescriptor& block, std::size_t m, std::size_t delta);

struct FilterRun {
  AnswerSet answers;
  std::uint64_t ops = 0;
  bool hashed = false;
};

// Holds the accumulated fragment pairs. The brute branch is deterministic, so
// its intersection is kept and extended pair by pair.
class MultiInstanceFilter {
 public:
  MultiInstanceFilter(QueryOracle& oracle, const AdaptiveConfig& cfg);

  void append(const FragmentPair& pair);
  const std::vector<FragmentPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool hashed_branch() const;

  // One run with fresh randomness drawn from rng.
  FilterRun run(Rng& rng);
  // Cost model of one run, in the units counted by FilterRun::ops.
  double expected_cost() const;

 private:
  Symbol frag_p(std::size_t pair, std::size_t i);
  Symbol frag_t(std::size_t pair, std::size_t j);

  QueryOracle* oracle_;
  AdaptiveConfig cfg_;
  std::vector<FragmentPair> pairs_;
  std::vector<SymbolSeq> p_cache_, t_cache_;  // kUnread until read
  PositionSet exact_;                          // intersection over the first exact_pairs_ pairs
  std::size_t exact_pairs_ = 0;
};

AnswerSet multi_instance_filter(QueryOracle& oracle, const std::vector<FragmentPair>& pairs,
                                const AdaptiveConfig& cfg, Rng& rng);

struct Candidate {
  std::optional<std::size_t> position;  // nullopt = bottom
  bool budget_breach = false;
};
Candidate sample_candidate(MultiInstanceFilter& filter, Rng& rng, std::uint64_t op_budget = 0);

struct CandidateBatch {
  std::vector<std::optional<std::size_t>> samples;
  bool budget_breach = false;
  std::uint64_t ops = 0;
};
// L draws under a joint budget of 10 times their expected cost; on breach all
// samples become 0.
CandidateBatch draw_candidates(MultiInstanceFilter& filter, std::size_t count, Rng& rng);

BlockDescriptor find_good_block(const std::vector<std::size_t>& samples, QueryOracle& oracle,
                                const AdaptiveConfig& cfg, Rng& rng);

struct PotentialEstimate {
  double mean = 0.0;
  double radius = 0.0;  // 95% normal-approximation half width
};
PotentialEstimate estimate_potential(MultiInstanceFilter& filter, Rng& rng, std::size_t trials);

TesterReport adaptive_test(QueryOracle& oracle, const AdaptiveConfig& cfg, Rng& rng);

// Eliminated candidate mass of each position under the weight vector w over
// [0..delta): text position i gets sum_x w[x] [i-x in [0..m), P[i-x] != T[i]],
// pattern position j gets sum_x w[x] [P[j] != T[j+x]].
struct EliminationMass {
  std::vector<double> text;
  std::vector<double> pattern;
};
EliminationMass elimination_mass(const Instance& inst, const std::vector<double>& weights);
std::size_t count_good_positions(const EliminationMass& mass, double threshold);
// Delta-aligned blocks holding at least min_count positions of mass >= threshold.
std::vector<BlockDescriptor> good_blocks(const EliminationMass& mass, std::size_t delta, double threshold,
                                         double min_count);

// Fits |M| m / (n k log2^4 m) over a small battery of random instances and
// clamps the result to >= 1.
double calibrate_container_constant(std::uint64_t seed, std::size_t battery = 3);

}  // namespace gapmatch
