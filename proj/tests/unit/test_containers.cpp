#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "gapmatch/containers.hpp"
#include "gapmatch/errors.hpp"
#include "gapmatch/rng.hpp"
#include "gapmatch/sync_set.hpp"
#include "oracles.hpp"

using namespace gapmatch;

namespace {

SymbolSeq random_string(std::size_t n, std::uint64_t sigma, Rng& rng) {
  SymbolSeq s(n);
  for (auto& x : s) x = rng.below(sigma);
  return s;
}

bool has(const PositionSet& s, std::size_t x) { return std::binary_search(s.begin(), s.end(), x); }

// Every pair of windows at distance exactly one has its mismatch covered.
bool one_mismatch_covered(const SymbolSeq& s, std::size_t m, const PositionSet& M) {
  for (std::size_t i = 0; i + m <= s.size(); ++i)
    for (std::size_t j = i + 1; j + m <= s.size(); ++j) {
      std::size_t cnt = 0, where = 0;
      for (std::size_t d = 0; d < m && cnt < 2; ++d)
        if (s[i + d] != s[j + d]) {
          ++cnt;
          where = d;
        }
      if (cnt == 1 && !has(M, i + where) && !has(M, j + where)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("sync set of a constant string is empty") {
  Rng rng(1);
  const SymbolSeq zeros(60, 0);
  CHECK(sync_set(zeros, 5, rng).positions.empty());
}

TEST_CASE("sync set conditions hold exhaustively on random strings") {
  Rng rng(2);
  for (int rep = 0; rep < 30; ++rep) {
    const SymbolSeq s = random_string(120, 2, rng);
    const SyncSet S = sync_set(s, 6, rng);
    CHECK(oracle::sync_conditions(s, 6, S.positions));
    CHECK(sync_density_holds(s, 6, S.positions));
  }
}

TEST_CASE("sync set covers an aperiodic region inside periodic filler") {
  Rng rng(3);
  SymbolSeq s(40, 0);
  const SymbolSeq mid = random_string(40, 3, rng);
  s.insert(s.end(), mid.begin(), mid.end());
  s.insert(s.end(), 40, 1);
  const std::size_t tau = 6;
  const SyncSet S = sync_set(s, tau, rng);
  CHECK(oracle::sync_conditions(s, tau, S.positions));
}

TEST_CASE("tau runs") {
  const std::vector<Run> zeros = tau_runs(SymbolSeq(20, 0), 5);
  REQUIRE(zeros.size() == 1);
  CHECK(zeros[0] == Run{0, 20, 1});
  SymbolSeq alt(20);
  for (std::size_t i = 0; i < 20; ++i) alt[i] = i % 2;
  CHECK(tau_runs(alt, 5).empty());
  Rng rng(4);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t tau = 3 + rng.below(7);
    SymbolSeq s = random_string(10 + rng.below(50), 2, rng);
    // Splice a periodic stretch so runs actually occur.
    const std::size_t per = 1 + rng.below(3), len = rng.below(30);
    const std::size_t at = rng.below(s.size());
    for (std::size_t i = 0; i < len && at + i < s.size(); ++i) s[at + i] = s[at + (i % per)];
    std::vector<oracle::NaiveRun> expect = oracle::tau_runs_naive(s, tau);
    std::vector<oracle::NaiveRun> got;
    for (const Run& r : tau_runs(s, tau)) got.push_back({r.start, r.end, r.period});
    std::sort(got.begin(), got.end());
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].start == expect[i].start);
      CHECK(got[i].end == expect[i].end);
      CHECK(got[i].period == expect[i].period);
    }
  }
}

TEST_CASE("light positions") {
  Rng rng(5);
  const SymbolSeq s = random_string(80, 2, rng);
  CHECK(light_positions(s, {7}, false).empty());
  // Two starts diverging at depth d.
  const SymbolSeq two = {0, 0, 1, 0, 0, 0};
  const std::size_t d = oracle::lce(two, 0, 3);
  const PositionSet lp = light_positions(two, {0, 3}, false);
  CHECK((has(lp, 0 + d) || has(lp, 3 + d)));
  for (int rep = 0; rep < 50; ++rep) {
    const SymbolSeq t = random_string(120, 2, rng);
    std::set<std::size_t> st;
    while (st.size() < 16) st.insert(rng.below(t.size()));
    const PositionSet starts(st.begin(), st.end());
    const PositionSet fwd = light_positions(t, starts, false);
    CHECK(fwd.size() <= 16 * 4);
    for (std::size_t a : starts)
      for (std::size_t b : starts) {
        if (a >= b) continue;
        const std::size_t l = oracle::lce(t, a, b);
        if (a + l >= t.size() || b + l >= t.size()) continue;
        CHECK((has(fwd, a + l) || has(fwd, b + l)));
      }
    // Reversed: prefixes ending before each start, read leftwards.
    const PositionSet rev = light_positions(t, starts, true);
    for (std::size_t a : starts)
      for (std::size_t b : starts) {
        if (a >= b) continue;
        std::size_t l = 0;
        while (l < a && t[a - 1 - l] == t[b - 1 - l]) ++l;
        if (l >= a) continue;
        CHECK((has(rev, a - 1 - l) || has(rev, b - 1 - l)));
      }
  }
}

TEST_CASE("one-mismatch container") {
  Rng rng(6);
  const ContainerSet small = one_mismatch_container(random_string(30, 2, rng), 3, rng);
  CHECK(small.positions.size() == 30);
  CHECK(small.fallback);
  for (int rep = 0; rep < 5; ++rep) {
    const SymbolSeq s = random_string(300, 2, rng);
    const ContainerSet M = one_mismatch_container(s, 60, rng);
    CHECK(one_mismatch_covered(s, 60, M.positions));
  }
  const ContainerSet z = one_mismatch_container(SymbolSeq(100, 0), 30, rng);
  CHECK(z.positions.size() <= 2);
}

TEST_CASE("k-mismatch container draws cover a fixed mismatch with high frequency") {
  Rng rng(7);
  const std::size_t n = 400, m = 120, k = 3;
  SymbolSeq s = random_string(n, 2, rng);
  // Plant windows i, j at distance 3.
  const std::size_t i = 20, j = 230;
  std::copy_n(s.begin() + i, m, s.begin() + j);
  for (std::size_t d : {5, 50, 100}) s[j + d] ^= 1;
  ContainerConfig cfg;
  cfg.c_fallback = 1e9;  // force the permuted path
  cfg.c_prime = 0.2;  // p in [6, 12), so the permuted window length m/p is at least 6
  std::size_t hits = 0;
  const int draws = 200;
  bool fell_back = false;
  double mean_size = 0;
  for (int t = 0; t < draws; ++t) {
    const ContainerSet M = k_mismatch_container(s, m, k, rng, cfg);
    fell_back |= M.fallback;
    mean_size += static_cast<double>(M.positions.size()) / draws;
    hits += has(M.positions, i + 50) || has(M.positions, j + 50);
  }
  CHECK_FALSE(fell_back);
  MESSAGE("coverage frequency " << static_cast<double>(hits) / draws << ", mean size " << mean_size);
  CHECK(static_cast<double>(hits) / draws >= 0.9);
  CHECK(k_mismatch_container(s, m, 60, rng).fallback);
  const SymbolSeq single = random_string(50, 2, rng);
  CHECK(pairs_fully_covered(single, 50, 3, k_mismatch_container(single, 50, 3, rng).positions));
}

TEST_CASE("container below and above") {
  Rng rng(8);
  const SymbolSeq tiny = random_string(14, 2, rng);
  const ContainerSet b = container_below(tiny, 5, 4, rng);
  CHECK(pairs_fully_covered(tiny, 5, 4, b.positions));
  const ContainerSet flat = container_below(SymbolSeq(40, 1), 10, 2, rng);
  CHECK(pairs_fully_covered(SymbolSeq(40, 1), 10, 2, flat.positions));
  SymbolSeq s = random_string(160, 2, rng);
  const ContainerSet a = container_above(s, 40, 4, rng);
  CHECK(pairs_capped_covered(s, 40, 4, a.positions));
  CHECK(pairs_fully_covered(s, 40, 16, a.positions));
}

TEST_CASE("verification of the example container sets") {
  const Instance inst = fixture::container_example(2);
  const CoverageCertificate cert = verify_container(inst, {0, 1, 3}, {8, 12, 13, 15, 21}, 2);
  CHECK(cert.pass);
  CHECK(cert.violations.empty());
  PositionSet all(inst.n());
  for (std::size_t x = 0; x < inst.n(); ++x) all[x] = x;
  CHECK(verify_container(inst, all, 2).pass);
  const CoverageCertificate none = verify_container(inst, {}, 2);
  CHECK_FALSE(none.pass);
  CHECK_FALSE(none.violations.empty());
  // Cross-check the certificate against the direct covered-count oracle.
  const std::set<std::size_t> pp = {0, 1, 3}, tp = {8, 12, 13, 15, 21};
  for (std::size_t i = 0; i < inst.delta(); ++i) {
    const std::size_t hd = hamming_distance(inst.pattern, window(inst.text, i, inst.m()));
    CHECK(oracle::covered(inst, i, pp, tp) >= std::min<std::size_t>(2, hd));
  }
}

TEST_CASE("mismatch container passes verification") {
  Rng rng(9);
  const Instance ex = fixture::container_example(2);
  CHECK(mismatch_container(ex, 2, rng).verified->pass);
  const Instance same = Instance::make({1, 0, 1, 1}, {1, 0, 1, 1}, 2, 1);
  CHECK(mismatch_container(same, 1, rng).verified->pass);
  SymbolSeq p = random_string(200, 2, rng), t = random_string(600, 2, rng);
  const Instance inst = Instance::make(p, t, 2, 5);
  const ContainerSet M = mismatch_container(inst, 5, rng);
  REQUIRE(M.verified.has_value());
  CHECK(M.verified->pass);
  CHECK(verify_container(inst, M.positions, 5).pass);
  std::set<std::size_t> both(M.positions.begin(), M.positions.end());
  for (std::size_t i = 0; i < inst.delta(); ++i) {
    const std::size_t hd = hamming_distance(inst.pattern, window(inst.text, i, inst.m()));
    REQUIRE(oracle::covered(inst, i, both, both) >= std::min<std::size_t>(5, hd));
  }
}

TEST_CASE("container size helpers and serialization") {
  CHECK(container_size_bound(64, 32, 1) == doctest::Approx(8.0 * 2 * std::pow(6.0, 4)));
  CHECK(container_ratio(0, 64, 32, 1) == 0.0);
  std::stringstream ss;
  write_container(ss, {1, 5, 9}, ContainerHeader{30, 10, 2, 7});
  ContainerHeader h;
  CHECK(read_container(ss, &h) == PositionSet{1, 5, 9});
  CHECK(h.n == 30);
  CHECK(h.k == 2);
  CHECK(h.seed == 7);
}
