// Acceptance battery: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "gapmatch/adaptive.hpp"
#include "gapmatch/containers.hpp"
#include "gapmatch/errors.hpp"
#include "gapmatch/fingerprint.hpp"
#include "gapmatch/instances.hpp"
#include "gapmatch/nonadaptive.hpp"
#include "gapmatch/one_execution.hpp"
#include "gapmatch/primes.hpp"
#include "gapmatch/sync_set.hpp"
#include "oracles.hpp"

using namespace gapmatch;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int prec = 4) {
  std::ostringstream o;
  o.precision(prec);
  o << x;
  return o.str();
}

SymbolSeq random_string(std::size_t n, std::uint64_t sigma, Rng& rng) {
  SymbolSeq s(n);
  for (auto& x : s) x = rng.below(sigma);
  return s;
}

// Overwrites a random stretch with a short period so periodic structure occurs.
void splice_periodic(SymbolSeq& s, Rng& rng) {
  if (s.size() < 2) return;
  const std::size_t per = 1 + rng.below(3);
  const std::size_t len = rng.below(s.size());
  const std::size_t at = rng.below(s.size());
  for (std::size_t i = 0; i < len && at + i < s.size(); ++i) s[at + i] = s[at + (i % per)];
}

// 1. Shared-randomness exactness of one execution against the per-alignment recomputation.
Outcome criterion1() {
  const auto t0 = Clock::now();
  Rng rng(1001);
  std::size_t agree = 0;
  const std::size_t total = 500;
  for (std::size_t rep = 0; rep < total; ++rep) {
    const std::size_t n = 2 + rng.below(299);
    const std::size_t m = 2 + rng.below(n - 1);
    const std::uint64_t sigmas[] = {2, 3, 5, 1u << 20};
    const std::uint64_t sigma = sigmas[rng.below(4)];
    SymbolSeq t = random_string(n, sigma, rng);
    if (rng.bernoulli(0.3)) splice_periodic(t, rng);
    SymbolSeq p = random_string(m, sigma, rng);
    if (rng.bernoulli(0.5)) {
      const std::size_t at = rng.below(n - m + 1);
      std::copy_n(t.begin() + static_cast<std::ptrdiff_t>(at), m, p.begin());
      if (rng.bernoulli(0.5)) p[rng.below(m)] = rng.below(sigma);
    }
    const std::size_t k = 1 + rng.below(m - 1);
    const Instance inst = Instance::make(p, t, sigma, k);
    const std::size_t delta = inst.delta();
    const std::uint64_t p_hat = std::max<std::uint64_t>(2, k) + rng.below(2 * n);
    const std::size_t z = 1 + rng.below(std::min<std::uint64_t>(p_hat, delta));
    ExecutionParams prm = make_execution_params(n, m, k, p_hat, z);
    if (rng.bernoulli(0.5)) prm.beta = 0.05 + 0.95 * rng.unit();
    const ExecutionRandomness rnd = draw_execution_randomness(prm, n, m, sigma, rng);
    const ExecutionOutcome out =
        run_execution([&](std::size_t j) { return inst.pattern[j]; }, [&](std::size_t i) { return inst.text[i]; }, n,
                      m, prm, rnd);
    if (!out.aborted && out.answers.enumerate() == oracle::execution_set(p, t, prm, rnd)) ++agree;
  }
  const double secs = seconds_since(t0);
  return {agree == total && secs < 60.0,
          std::to_string(agree) + "/" + std::to_string(total) + " agree, " + fmt(secs, 3) + " s (limit 60 s)"};
}

// 2. Yes on every planted exact instance for all three testers.
Outcome criterion2() {
  const auto t0 = Clock::now();
  std::size_t fails[3] = {0, 0, 0}, runs = 0, adaptive_native = 0;
  Rng pick(2002);
  for (std::size_t rep = 0; rep < 500; ++rep) {
    const std::size_t n = 64 + pick.below(537);
    std::size_t m;
    if (rep % 2 == 0) {
      const std::size_t delta = 1 + pick.below(n / 10);
      m = n - delta + 1;
    } else {
      m = n / 4 + pick.below(n - n / 4 + 1);
    }
    m = std::max<std::size_t>(m, 8);
    const std::size_t k = std::max<std::size_t>(1, m / 50 + pick.below(std::max<std::size_t>(1, m / 4)));
    const LabeledInstance li = generate("planted", n, m, std::min(k, m - 1), 0, 5000 + rep);
    const Instance& inst = li.instance;
    if (10 * inst.delta() <= inst.n() && inst.n() >= 64) ++adaptive_native;
    for (std::uint64_t s = 0; s < 4; ++s) {
      ++runs;
      Rng r1(derive_seed(rep, 10 * s + 1)), r2(derive_seed(rep, 10 * s + 2)), r3(derive_seed(rep, 10 * s + 3));
      QueryOracle o1(inst), o2(inst), o3(inst);
      if (folklore_test(o1, r1).answer != Answer::Yes) ++fails[0];
      NonadaptiveConfig nc;
      nc.kprime_override = 0;
      if (tolerant_decide(o2, nc, r2).answer != Answer::Yes) ++fails[1];
      const AdaptiveConfig ac = AdaptiveConfig::derive(inst.n(), inst.m(), inst.k);
      if (adaptive_test(o3, ac, r3).answer != Answer::Yes) ++fails[2];
    }
  }
  const double secs = seconds_since(t0);
  return {fails[0] + fails[1] + fails[2] == 0,
          "failures folklore=" + std::to_string(fails[0]) + " tolerant=" + std::to_string(fails[1]) +
              " adaptive=" + std::to_string(fails[2]) + " over " + std::to_string(runs) +
              " runs each (adaptive main path on " + std::to_string(adaptive_native) + "/500 instances), " +
              fmt(secs, 3) + " s"};
}

// Oracle-verified No-instances from the random family.
std::vector<LabeledInstance> verified_far(std::size_t n, std::size_t m, std::size_t k, std::size_t count,
                                          std::uint64_t seed0) {
  std::vector<LabeledInstance> out;
  for (std::uint64_t s = seed0; out.size() < count; ++s) {
    LabeledInstance li = generate("random", n, m, k, 0, s, VerifyMode::Always);
    if (li.truth_kfar.verified && *li.truth_kfar.value) out.push_back(std::move(li));
  }
  return out;
}

// 3. No-rates on verified far instances.
Outcome criterion3() {
  const auto t0 = Clock::now();
  const auto far = verified_far(2000, 1000, 64, 200, 30000);
  std::size_t no_tol = 0;
  for (std::size_t i = 0; i < far.size(); ++i) {
    QueryOracle o(far[i].instance);
    Rng rng(derive_seed(3003, i));
    no_tol += tolerant_decide(o, {}, rng).answer == Answer::No;
  }
  const auto far_a = verified_far(1100, 1000, 64, 200, 40000);
  std::size_t no_ad = 0;
  for (std::size_t i = 0; i < far_a.size(); ++i) {
    QueryOracle o(far_a[i].instance);
    Rng rng(derive_seed(3004, i));
    const AdaptiveConfig cfg = AdaptiveConfig::derive(1100, 1000, 64);
    no_ad += adaptive_test(o, cfg, rng).answer == Answer::No;
  }
  const double secs = seconds_since(t0);
  const double ft = no_tol / 200.0, fa = no_ad / 200.0;
  return {ft >= 0.95 && fa >= 0.90 && secs < 600.0,
          "tolerant No " + fmt(ft) + " (need >= 0.95), adaptive No " + fmt(fa) + " (need >= 0.90), " +
              fmt(secs, 3) + " s (limit 600 s)"};
}

// 4. Reported set contains the plant and lies inside Occ_k.
Outcome criterion4() {
  const auto t0 = Clock::now();
  const std::size_t n = 2000, m = 1000, k = 64, kprime = 8, trials = 200;
  std::size_t has_plant = 0, inside = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const LabeledInstance li = generate("planted-noisy", n, m, k, kprime, 60000 + i, VerifyMode::Never);
    QueryOracle o(li.instance);
    Rng rng(derive_seed(4004, i));
    const TesterReport rep = tolerant_report(o, {}, rng);
    const PositionSet& out = *rep.reported_set;
    has_plant += std::binary_search(out.begin(), out.end(), *li.plant);
    const PositionSet occ = occ_k_bruteforce(li.instance, k);
    inside += std::includes(occ.begin(), occ.end(), out.begin(), out.end());
  }
  const double fp = has_plant / static_cast<double>(trials), fi = inside / static_cast<double>(trials);
  return {fp >= 0.95 && fi >= 0.95, "plant reported " + fmt(fp) + ", A_out within Occ_k " + fmt(fi) +
                                        " (need >= 0.95 each; n=2000, m=1000), " + fmt(seconds_since(t0), 3) + " s"};
}

// 5. Container coverage after verify-and-redraw, plus the size bound.
Outcome criterion5() {
  const auto t0 = Clock::now();
  Rng rng(5005);
  std::size_t pass = 0, within = 0, builds = 0;
  double worst_ratio = 0;
  auto check = [&](const Instance& inst, std::size_t k) {
    ++builds;
    ContainerSet M;
    try {
      M = mismatch_container(inst, k, rng);
    } catch (const ConstructionError&) {
      return;
    }
    // Independent coverage count per alignment.
    std::vector<char> in(inst.n(), 0);
    for (std::size_t x : M.positions) in[x] = 1;
    bool ok = true;
    for (std::size_t i = 0; i < inst.delta() && ok; ++i) {
      std::size_t hd = 0, cov = 0;
      for (std::size_t j = 0; j < inst.m(); ++j)
        if (inst.pattern[j] != inst.text[i + j]) {
          ++hd;
          cov += in[j] || in[i + j];
        }
      ok = cov >= std::min(k, hd);
    }
    pass += ok && M.verified && M.verified->pass;
    const double bound = 8.0 * (static_cast<double>(inst.n()) / inst.m()) * k *
                         std::pow(std::log2(static_cast<double>(inst.n())), 4);
    within += static_cast<double>(M.positions.size()) <= bound;
    worst_ratio = std::max(worst_ratio, static_cast<double>(M.positions.size()) / bound);
  };
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 20 + rng.below(581);
    const std::size_t m = 2 + rng.below(n - 1);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(m - 1, 8));
    SymbolSeq t = random_string(n, 2, rng), p = random_string(m, 2, rng);
    if (rng.bernoulli(0.3)) splice_periodic(t, rng);
    check(Instance::make(p, t, 2, k), k);
  }
  const Instance example = Instance::make({0, 1, 0, 0, 1, 1, 1, 1, 1, 1},
                                          {0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 1,
                                           1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1},
                                          2, 2);
  check(example, 2);
  const bool example_sets = verify_container(example, {0, 1, 3}, {8, 12, 13, 15, 21}, 2).pass;
  const double fw = within / static_cast<double>(builds);
  return {pass == builds && fw >= 0.95 && example_sets,
          std::to_string(pass) + "/" + std::to_string(builds) + " verified, size bound met on " + fmt(fw) +
              " (worst |M|/bound " + fmt(worst_ratio) + "), example sets " + (example_sets ? "pass" : "fail") +
              ", " + fmt(seconds_since(t0), 3) + " s"};
}

// 6. Synchronizing-set conditions by exhaustive check.
Outcome criterion6() {
  Rng rng(6006);
  std::size_t pass = 0, total = 0, retries = 0;
  for (int rep = 0; rep < 100; ++rep) {
    for (std::size_t tau : {4, 6, 10}) {
      ++total;
      const std::size_t n = 2 * tau + rng.below(200 - 2 * tau + 1);
      SymbolSeq s = random_string(n, 2 + rng.below(3), rng);
      if (rng.bernoulli(0.5)) splice_periodic(s, rng);
      try {
        const SyncSet S = sync_set(s, tau, rng);
        retries += S.attempts - 1;
        pass += oracle::sync_conditions(s, tau, S.positions);
      } catch (const ConstructionError&) {
      }
    }
  }
  return {pass == total, std::to_string(pass) + "/" + std::to_string(total) + " strings pass (" +
                             std::to_string(retries) + " seed retries)"};
}

// 7. Sliding fingerprint exactness and collision rate.
Outcome criterion7() {
  Rng rng(7007);
  std::size_t exact = 0;
  const std::size_t sequences = 100000;
  for (std::size_t rep = 0; rep < sequences; ++rep) {
    const std::uint64_t q = rep % 2 ? kLargePrime : 1000003;
    const FingerprintFn f = FingerprintFn::random(q, 32, rng);
    SlidingFingerprint sf(f);
    std::deque<Symbol> shadow;
    bool ok = true;
    const std::size_t steps = 1 + rng.below(40);
    for (std::size_t st = 0; st < steps && ok; ++st) {
      if (!shadow.empty() && (shadow.size() == 32 || rng.bernoulli(0.4))) {
        sf.drop_left(shadow.front());
        shadow.pop_front();
      } else {
        const Symbol c = rng.below(q < 1000 ? q : 1000);
        sf.extend_right(c);
        shadow.push_back(c);
      }
      ok = sf.value() == oracle::poly_eval(SymbolSeq(shadow.begin(), shadow.end()), f.x(), q);
    }
    exact += ok;
  }
  // Collisions over a small modulus, where the bound is measurable.
  const std::uint64_t q = 1009;
  const std::size_t m = 10, pairs = 10000;
  std::size_t coll = 0;
  for (std::size_t rep = 0; rep < pairs; ++rep) {
    const SymbolSeq a = random_string(m, 4, rng);
    SymbolSeq b = random_string(m, 4, rng);
    if (a == b) b[0] = (a[0] + 1) % 4;
    const FingerprintFn f = FingerprintFn::random(q, m, rng);
    coll += fp_eval(f, a) == fp_eval(f, b);
  }
  const double bound = 2.0 * (m - 1) / static_cast<double>(q - 1);
  const double slack = 3.0 * std::sqrt(bound / pairs);
  const double rate = coll / static_cast<double>(pairs);
  return {exact == sequences && rate <= bound + slack,
          std::to_string(exact) + "/" + std::to_string(sequences) + " sequences exact; collision rate " + fmt(rate) +
              " at q=1009, m=10 (bound " + fmt(bound) + " + slack " + fmt(slack) + ")"};
}

// 8. Same-randomness containment of the hashed filter, d-1 versus d pairs.
Outcome criterion8() {
  const auto t0 = Clock::now();
  const std::size_t m = 640, n = m + 63;  // delta = 64
  std::size_t held = 0, nontrivial = 0, hashed = 0;
  const std::size_t runs = 10000;
  AdaptiveConfig cfg = AdaptiveConfig::derive(n, m, 64);
  cfg.branch = FilterBranch::Hashed;
  cfg.k0 = 2;
  Rng pick(8008);
  std::vector<LabeledInstance> pool;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const char* d = s % 3 == 0 ? "random" : (s % 3 == 1 ? "planted" : "hybrid-equal");
    pool.push_back(generate(d, n, m, 64, 0, 80000 + s, VerifyMode::Never));
  }
  for (std::size_t r = 0; r < runs; ++r) {
    const Instance& inst = pool[r % pool.size()].instance;
    const std::size_t d = 2 + pick.below(5);
    std::vector<FragmentPair> pairs;
    for (std::size_t j = 0; j < d; ++j) {
      BlockDescriptor b;
      b.start = pick.below(m / 64) * 64;
      pairs.push_back(extract_fragments(b, m, cfg.delta));
    }
    QueryOracle o(inst);
    MultiInstanceFilter shorter(o, cfg), longer(o, cfg);
    for (std::size_t j = 0; j < d; ++j) {
      if (j + 1 < d) shorter.append(pairs[j]);
      longer.append(pairs[j]);
    }
    const std::uint64_t seed = pick();
    Rng ra(seed), rb(seed);
    const FilterRun fa = shorter.run(ra), fb = longer.run(rb);
    const AnswerSet& a = fa.answers;
    const AnswerSet& b = fb.answers;
    hashed += fa.hashed && fb.hashed;
    bool ok = true;
    for (std::size_t x : b.enumerate()) ok = ok && a.contains(x);
    held += ok;
    nontrivial += !b.empty();
  }
  const double delta_prob = cfg.delta_prob;
  const double need = 1.0 - 2.0 * delta_prob / 64.0;
  const double frac = held / static_cast<double>(runs);
  return {frac >= need && hashed == runs, "containment in " + fmt(frac, 6) + " of " + std::to_string(runs) + " runs (need >= " +
                            fmt(need, 8) + "), nonempty A_d in " + std::to_string(nontrivial) + " runs, hashed branch in " +
                            std::to_string(hashed) + ", " + fmt(seconds_since(t0), 3) + " s"};
}

// 9. Log-log slope of mean queries against k for the non-adaptive tester.
Outcome criterion9() {
  const auto t0 = Clock::now();
  cli::BenchOptions o;
  o.tester = "nonadaptive";
  o.n = 4096;
  o.m = 2048;
  o.sweep = {16, 32, 64, 128, 256};
  o.trials = 50;
  o.seed = 9009;
  const cli::BenchSummary s = cli::summarize(cli::run_bench(o));
  o.distinct = true;
  const cli::BenchSummary sd = cli::summarize(cli::run_bench(o));
  o.distinct = false;
  o.tester = "folklore";
  const cli::BenchSummary sf = cli::summarize(cli::run_bench(o));
  const double secs = seconds_since(t0);
  std::string means;
  for (const auto& [k, q] : s.mean_queries) means += " k" + std::to_string(k) + "=" + fmt(q, 5);
  return {s.slope >= -0.65 && s.slope <= -0.35 && secs < 1800.0,
          "slope " + fmt(s.slope) + " (need [-0.65, -0.35]); means" + means + "; distinct-query slope " +
              fmt(sd.slope) + ", folklore slope " + fmt(sf.slope) + "; " + fmt(secs, 3) + " s"};
}

// 10. Far-instance rates of the random and independent-hybrid families.
Outcome criterion10() {
  auto frac_far = [](const char* dist, std::uint64_t seed0, std::size_t n, std::size_t m, std::size_t k) {
    std::size_t far = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      const LabeledInstance li = generate(dist, n, m, k, 0, seed0 + s, VerifyMode::Never);
      far += occ_k_bruteforce(li.instance, li.instance.k).empty();
    }
    return far / 200.0;
  };
  const double r = frac_far("random", 100000, 2000, 1000, 64);
  const double h = frac_far("hybrid-indep", 110000, 2000, 1000, 64);
  const double la = frac_far("large-alpha-random", 120000, 200, 100, 0);
  return {r >= 0.8 && h >= 0.8, "random " + fmt(r) + ", hybrid-indep " + fmt(h) +
                                    " (need >= 0.8 each); large-alphabet random " + fmt(la) + " (n=200)"};
}

}  // namespace

// Optional arguments select criteria by number; default runs all.
int main(int argc, char** argv) {
  std::vector<std::size_t> only;
  for (int a = 1; a < argc; ++a) only.push_back(std::stoul(argv[a]));
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"one-execution exactness", criterion1},  {"Yes-soundness", criterion2},
      {"No-correctness", criterion3},           {"reporting sandwich", criterion4},
      {"container coverage", criterion5},       {"synchronizing-set conditions", criterion6},
      {"fingerprint bounds", criterion7},       {"filter coupling", criterion8},
      {"query scaling fit", criterion9},        {"far-instance distribution rates", criterion10},
  };
  int failed = 0;
  std::size_t ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), i + 1) == only.end()) continue;
    ++ran;
    const Outcome o = criteria[i].second();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
