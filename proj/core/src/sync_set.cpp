#include "gapmatch/sync_set.hpp"

#include <deque>
#include <limits>

#include "gapmatch/errors.hpp"
#include "gapmatch/fingerprint.hpp"
#include "gapmatch/primes.hpp"

namespace gapmatch {

std::vector<std::uint8_t> periodic_windows(SymbolView s, std::size_t len, std::size_t max_period) {
  const std::size_t n = s.size();
  std::vector<std::uint8_t> flags(n >= len ? n - len + 1 : 0, 0);
  if (flags.empty() || len == 0) return flags;
  // run[t] = number of consecutive t' >= t with s[t'] = s[t'+p].
  std::vector<std::size_t> run(n + 1, 0);
  for (std::size_t p = 1; p <= max_period && p < len; ++p) {
    run[n - p] = 0;
    for (std::size_t t = n - p; t-- > 0;) run[t] = s[t] == s[t + p] ? run[t + 1] + 1 : 0;
    for (std::size_t j = 0; j < flags.size(); ++j)
      if (!flags[j] && run[j] >= len - p) flags[j] = 1;
  }
  if (max_period >= len)
    for (auto& f : flags) f = 1;
  return flags;
}

bool sync_density_holds(SymbolView s, std::size_t tau, const PositionSet& positions) {
  const std::size_t n = s.size();
  if (static_cast<double>(positions.size()) > 30.0 * static_cast<double>(n) / static_cast<double>(tau))
    return false;
  if (n + 1 < 3 * tau) return true;
  std::vector<std::size_t> prefix(n + 1, 0);
  std::vector<std::uint8_t> mark(n, 0);
  for (std::size_t p : positions) mark[p] = 1;
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + mark[i];
  const auto periodic = periodic_windows(s, 3 * tau - 1, tau / 3);
  for (std::size_t i = 0; i + 3 * tau - 1 <= n; ++i) {
    const bool empty = prefix[i + tau] == prefix[i];
    if (empty != static_cast<bool>(periodic[i])) return false;
  }
  return true;
}

namespace {

PositionSet draw_sync_set(SymbolView s, std::size_t tau, std::uint64_t seed) {
  constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  const std::size_t n = s.size();
  Rng rng(seed);
  const FingerprintFn f = FingerprintFn::random(kLargePrime, tau, rng);
  const std::uint64_t salt = rng();
  const auto periodic = periodic_windows(s, tau, tau / 3);

  // phi(j) for j in [0..n-tau]: salted content hash of s[j..j+tau), or +inf.
  std::vector<std::uint64_t> phi(n - tau + 1);
  SlidingFingerprint sf(f);
  for (std::size_t t = 0; t < tau; ++t) sf.extend_right(s[t] % f.q());
  for (std::size_t j = 0;; ++j) {
    const std::uint64_t h = splitmix64(sf.value() ^ salt);
    phi[j] = periodic[j] ? kInf : (h == kInf ? kInf - 1 : h);
    if (j + tau >= n) break;
    sf.drop_left(s[j] % f.q());
    sf.extend_right(s[j + tau] % f.q());
  }

  // Sliding minimum of phi over [i..i+tau].
  PositionSet out;
  std::deque<std::size_t> dq;
  std::size_t next = 0;
  for (std::size_t i = 0; i + 2 * tau <= n; ++i) {
    while (next <= i + tau) {
      while (!dq.empty() && phi[dq.back()] >= phi[next]) dq.pop_back();
      dq.push_back(next++);
    }
    while (dq.front() < i) dq.pop_front();
    const std::uint64_t mn = phi[dq.front()];
    if (mn != kInf && (phi[i] == mn || phi[i + tau] == mn)) out.push_back(i);
  }
  return out;
}

}  // namespace

SyncSet sync_set(SymbolView s, std::size_t tau, Rng& rng, std::size_t retry_cap) {
  require(tau >= 1 && 2 * tau <= s.size(), "sync_set: need 1 <= tau <= n/2");
  SyncSet best;
  best.tau = tau;
  std::size_t best_size = std::numeric_limits<std::size_t>::max();
  for (std::size_t attempt = 1; attempt <= std::max<std::size_t>(retry_cap, 1); ++attempt) {
    const std::uint64_t seed = rng();
    PositionSet pos = draw_sync_set(s, tau, seed);
    if (sync_density_holds(s, tau, pos)) return SyncSet{tau, std::move(pos), seed, attempt};
    best_size = std::min(best_size, pos.size());
  }
  throw ConstructionError("sync_set: retry cap exhausted", best_size);
}

}  // namespace gapmatch
