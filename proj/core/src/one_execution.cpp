#include "gapmatch/one_execution.hpp"

#include <cmath>

#include "gapmatch/errors.hpp"
#include "gapmatch/primes.hpp"

namespace gapmatch {

double sampling_rate(std::size_t n, std::size_t k) {
  require(k >= 1, "sampling_rate: need k >= 1");
  if (n <= 1) return 0.0;
  return -std::expm1(-4.0 * std::log(static_cast<double>(n)) / static_cast<double>(k));
}

ExecutionParams make_execution_params(std::size_t n, std::size_t m, std::size_t k, std::uint64_t p_hat,
                                      std::size_t z) {
  require(m >= 1 && m <= n, "make_execution_params: need 1 <= m <= n");
  require(p_hat >= 2 && p_hat >= k, "make_execution_params: need p_hat >= max(2, k)");
  const std::size_t delta = n - m + 1;
  const std::uint64_t cap = std::min<std::uint64_t>(p_hat, delta);
  require(z >= 1 && z <= cap, "make_execution_params: need 1 <= z <= min(p_hat, delta)");
  ExecutionParams prm;
  prm.p_hat = p_hat;
  prm.z = z;
  const std::uint64_t span = std::min<std::uint64_t>(2 * p_hat, delta);
  prm.z_prime = static_cast<std::size_t>((span + z - 1) / z);
  prm.beta = sampling_rate(n, k);
  return prm;
}

ExecutionRandomness draw_execution_randomness(const ExecutionParams& params, std::size_t n,
                                              std::size_t m, std::uint64_t sigma, Rng& rng) {
  ExecutionRandomness rnd;
  rnd.p = random_prime(params.p_hat, 2 * params.p_hat + 1, rng);
  const auto lo = -static_cast<std::int64_t>((params.z_prime - 1) * params.z);
  rnd.B = ResidueWindow::draw(rnd.p, params.beta, lo, static_cast<std::int64_t>(n), rng);
  const ModulusChoice mod = choose_modulus(static_cast<double>(n), 10, sigma, rng);
  rnd.F = FingerprintFn::random(mod.q, m, rng);
  rnd.modulus_substituted = mod.substituted;
  return rnd;
}

ExecutionOutcome one_execution(QueryOracle& oracle, const ExecutionParams& params, Rng& rng,
                               std::vector<std::string>* deviations) {
  const std::size_t n = oracle.n(), m = oracle.m();
  const ExecutionRandomness rnd = draw_execution_randomness(params, n, m, oracle.sigma(), rng);
  if (deviations && rnd.modulus_substituted)
    deviations->push_back("fingerprint modulus: [n^10, 2n^10] exceeds 2^61, fixed prime 2^62-57");
  return run_execution([&](std::size_t j) { return oracle.pattern(j); },
                       [&](std::size_t i) { return oracle.text(i); }, n, m, params, rnd);
}

}  // namespace gapmatch
