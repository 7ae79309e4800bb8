#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "gapmatch/query_oracle.hpp"
#include "gapmatch/report.hpp"
#include "gapmatch/rng.hpp"

namespace gapmatch {

// Baseline: sample R_P, R_T and answer Yes iff some alignment shows no
// mismatch on R_P intersected with (R_T - i).
TesterReport folklore_test(QueryOracle& oracle, Rng& rng);

// Sampling rates (r_P, r_T) of the folklore tester.
struct FolkloreRates {
  double pattern;
  double text;
};
FolkloreRates folklore_rates(std::size_t n, std::size_t m, std::size_t k);

std::size_t choose_z(std::uint64_t p_hat, std::size_t n, std::size_t m, std::size_t delta);

struct NonadaptiveConfig {
  Profile profile = Profile::Desk;
  double c_phat = 2.0;
  double abort_factor = 20.0;
  std::optional<std::size_t> kprime_override;  // used when the adaptive tester delegates
};

// Derived driver parameters for an instance.
struct DriverPlan {
  std::size_t kprime = 0;
  bool brute_force = false;  // kprime > k/5
  double rho = 1.0;          // n^{4k'/k}
  std::uint64_t p_hat = 2;
  std::size_t r = 1;
  std::size_t z = 1;
  std::size_t z_prime = 1;
  double alpha = 1.0 / 6.0;
  std::size_t kept = 1;            // ceil((1 - alpha) r)
  double vote_threshold = 0.0;     // 2 alpha r
  double expected_cost = 0.0;      // per-execution cost model
  std::uint64_t op_budget = 0;
};
DriverPlan plan_driver(std::size_t n, std::size_t m, std::size_t k, std::size_t kprime,
                       const NonadaptiveConfig& cfg);

TesterReport tolerant_decide(QueryOracle& oracle, const NonadaptiveConfig& cfg, Rng& rng);
TesterReport tolerant_report(QueryOracle& oracle, const NonadaptiveConfig& cfg, Rng& rng);

}  // namespace gapmatch
