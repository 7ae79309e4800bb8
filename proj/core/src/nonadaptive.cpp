#include "gapmatch/nonadaptive.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "gapmatch/errors.hpp"
#include "gapmatch/one_execution.hpp"

namespace gapmatch {

const char* to_string(Answer a) { return a == Answer::Yes ? "Yes" : "No"; }
const char* to_string(Profile p) { return p == Profile::Paper ? "paper" : "desk"; }

std::optional<Profile> parse_profile(const std::string& s) {
  if (s == "paper") return Profile::Paper;
  if (s == "desk") return Profile::Desk;
  return std::nullopt;
}

void TesterReport::note(const std::string& d) {
  if (std::find(deviations.begin(), deviations.end(), d) == deviations.end()) deviations.push_back(d);
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

void copy_queries(const QueryOracle& oracle, std::uint64_t p0, std::uint64_t t0, TesterReport& rep) {
  rep.queries_pattern = oracle.pattern_queries() - p0;
  rep.queries_text = oracle.text_queries() - t0;
}

// Reads everything and answers from the exact k-mismatch occurrence set.
TesterReport brute_force(QueryOracle& oracle, bool report) {
  TesterReport rep;
  Instance copy;
  copy.sigma = oracle.sigma();
  copy.k = oracle.k();
  copy.kprime = oracle.kprime();
  copy.pattern.resize(oracle.m());
  copy.text.resize(oracle.n());
  for (std::size_t j = 0; j < oracle.m(); ++j) copy.pattern[j] = oracle.pattern(j);
  for (std::size_t i = 0; i < oracle.n(); ++i) copy.text[i] = oracle.text(i);
  PositionSet occ = occ_k_bruteforce(copy, copy.k);
  rep.answer = occ.empty() ? Answer::No : Answer::Yes;
  if (report) rep.reported_set = std::move(occ);
  return rep;
}

std::uint64_t ceil_u64(double x) {
  if (!(x < 0x1.0p61)) return std::uint64_t{1} << 61;
  return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace

FolkloreRates folklore_rates(std::size_t n, std::size_t m, std::size_t k) {
  const double ln = std::log(static_cast<double>(n));
  const double rp = std::min(1.0, std::sqrt(2.0 * n * ln / (static_cast<double>(k) * m)));
  const double prod = std::min(1.0, 2.0 * ln / static_cast<double>(k));
  const double rt = rp > 0.0 ? std::min(1.0, prod / rp) : 1.0;
  return {rp, rt};
}

TesterReport folklore_test(QueryOracle& oracle, Rng& rng) {
  const auto start = Clock::now();
  const std::uint64_t p0 = oracle.pattern_queries(), t0 = oracle.text_queries();
  const std::size_t n = oracle.n(), m = oracle.m(), delta = oracle.delta();
  const FolkloreRates rates = folklore_rates(n, m, oracle.k());

  std::vector<std::size_t> rp;
  std::vector<Symbol> pval;
  for (std::size_t j = 0; j < m; ++j)
    if (rng.bernoulli(rates.pattern)) {
      rp.push_back(j);
      pval.push_back(oracle.pattern(j));
    }
  std::vector<std::uint8_t> in_rt(n, 0);
  std::vector<Symbol> tval(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (rng.bernoulli(rates.text)) {
      in_rt[i] = 1;
      tval[i] = oracle.text(i);
    }

  TesterReport rep;
  rep.answer = Answer::No;
  for (std::size_t i = 0; i < delta && rep.answer == Answer::No; ++i) {
    bool clean = true;
    for (std::size_t a = 0; a < rp.size() && clean; ++a) {
      const std::size_t t = i + rp[a];
      clean = !in_rt[t] || tval[t] == pval[a];
    }
    if (clean) rep.answer = Answer::Yes;
  }
  copy_queries(oracle, p0, t0, rep);
  rep.wall_time_ns = elapsed_ns(start);
  return rep;
}

std::size_t choose_z(std::uint64_t p_hat, std::size_t n, std::size_t m, std::size_t delta) {
  require(p_hat >= 2, "choose_z: need p_hat >= 2");
  const std::uint64_t cap = std::max<std::uint64_t>(1, std::min<std::uint64_t>(p_hat, delta));
  if (static_cast<long double>(p_hat) * m <= 2.0L * n) return static_cast<std::size_t>(cap);
  const double span = static_cast<double>(std::min<std::uint64_t>(2 * p_hat, delta));
  const auto z = static_cast<std::uint64_t>(std::ceil(std::sqrt(span * n / m)));
  return static_cast<std::size_t>(std::clamp<std::uint64_t>(z, 1, cap));
}

DriverPlan plan_driver(std::size_t n, std::size_t m, std::size_t k, std::size_t kprime,
                       const NonadaptiveConfig& cfg) {
  DriverPlan plan;
  plan.kprime = kprime;
  plan.brute_force = 5 * kprime > k;
  const double ln = std::log(static_cast<double>(n));
  const double dk = static_cast<double>(k);
  plan.rho = std::exp(4.0 * static_cast<double>(kprime) * ln / dk);
  const double l2 = std::max(1.0, std::ceil(std::log2(static_cast<double>(n))));
  const double log_factor = cfg.profile == Profile::Paper ? std::pow(l2, 9) : l2 * l2;
  plan.p_hat = std::max<std::uint64_t>({ceil_u64(cfg.c_phat * plan.rho * dk * log_factor), k, 2});
  const double reps = cfg.profile == Profile::Paper ? 216.0 * plan.rho * ln : 40.0 * plan.rho;
  plan.r = static_cast<std::size_t>(std::max(1.0, std::ceil(reps - 1e-9)));
  const std::size_t delta = n - m + 1;
  plan.z = choose_z(plan.p_hat, n, m, delta);
  const std::uint64_t span = std::min<std::uint64_t>(2 * plan.p_hat, delta);
  plan.z_prime = static_cast<std::size_t>((span + plan.z - 1) / plan.z);
  plan.alpha = 1.0 / (6.0 * plan.rho);
  plan.kept = static_cast<std::size_t>(std::ceil((1.0 - plan.alpha) * static_cast<double>(plan.r) - 1e-9));
  plan.kept = std::clamp<std::size_t>(plan.kept, 1, plan.r);
  plan.vote_threshold = 2.0 * plan.alpha * static_cast<double>(plan.r);
  // Reads of X_u and Y_v with beta <= 4 ln n / k, plus per-block bookkeeping.
  const double beta_ub = std::min(1.0, 4.0 * ln / dk);
  const double blocks = static_cast<double>(plan.z_prime) *
                        (std::ceil(static_cast<double>(delta) / static_cast<double>(plan.p_hat)) + 1.0);
  plan.expected_cost = (static_cast<double>(plan.z) * m + 3.0 * plan.z_prime * n) * beta_ub +
                       static_cast<double>(plan.z) + blocks + 1.0;
  plan.op_budget = ceil_u64(cfg.abort_factor * plan.rho * plan.expected_cost);
  return plan;
}

namespace {

TesterReport run_driver(QueryOracle& oracle, const NonadaptiveConfig& cfg, Rng& rng, bool report) {
  const auto start = Clock::now();
  const std::uint64_t p0 = oracle.pattern_queries(), t0 = oracle.text_queries();
  const std::size_t n = oracle.n(), m = oracle.m(), k = oracle.k(), delta = oracle.delta();
  const std::size_t kprime = cfg.kprime_override.value_or(oracle.kprime());
  const DriverPlan plan = plan_driver(n, m, k, kprime, cfg);

  if (plan.brute_force) {
    TesterReport rep = brute_force(oracle, report);
    rep.note("kprime > k/5: brute force");
    copy_queries(oracle, p0, t0, rep);
    rep.wall_time_ns = elapsed_ns(start);
    return rep;
  }

  TesterReport rep;
  if (cfg.profile == Profile::Desk)
    rep.note("desk profile: p_hat uses ceil(log2 n)^2, r = ceil(40 n^(4k'/k))");
  rep.note("answer-set random access by binary search over segments");

  ExecutionParams prm = make_execution_params(n, m, k, plan.p_hat, plan.z);
  prm.op_budget = plan.op_budget;

  const std::size_t pieces = n / m;
  auto piece_lo = [&](std::size_t s) { return s * m; };
  auto piece_hi = [&](std::size_t s) { return std::min((s + 1) * m, delta); };

  std::vector<std::vector<std::size_t>> counts(pieces, std::vector<std::size_t>(plan.r, 0));
  std::vector<AnswerSet> sets;
  if (report) sets.resize(plan.r);
  const std::uint64_t base_seed = rng();
  for (std::size_t l = 0; l < plan.r; ++l) {
    Rng er(derive_seed(base_seed, l));
    ExecutionOutcome out = one_execution(oracle, prm, er, &rep.deviations);
    if (out.aborted) ++rep.executions_aborted;
    for (std::size_t s = 0; s < pieces; ++s) counts[s][l] = out.answers.count_in(piece_lo(s), piece_hi(s));
    if (report) sets[l] = std::move(out.answers);
  }
  rep.executions = plan.r;
  std::sort(rep.deviations.begin(), rep.deviations.end());
  rep.deviations.erase(std::unique(rep.deviations.begin(), rep.deviations.end()), rep.deviations.end());

  bool any_piece = false;
  PositionSet reported;
  std::vector<std::size_t> order(plan.r);
  for (std::size_t s = 0; s < pieces; ++s) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return counts[s][a] < counts[s][b]; });
    const bool nonempty = counts[s][order[plan.kept - 1]] > 0;
    any_piece = any_piece || nonempty;
    if (!report || !nonempty) continue;
    const std::size_t lo = piece_lo(s), hi = piece_hi(s);
    std::vector<std::size_t> votes(hi - lo, 0);
    for (std::size_t a = 0; a < plan.kept; ++a) {
      const std::size_t l = order[a];
      if (counts[s][l] == 0) continue;
      for (std::size_t i : sets[l].enumerate_range(lo, hi)) ++votes[i - lo];
    }
    for (std::size_t i = lo; i < hi; ++i)
      if (static_cast<double>(votes[i - lo]) >= plan.vote_threshold) reported.push_back(i);
  }
  rep.answer = any_piece ? Answer::Yes : Answer::No;
  if (report) rep.reported_set = std::move(reported);
  copy_queries(oracle, p0, t0, rep);
  rep.wall_time_ns = elapsed_ns(start);
  return rep;
}

}  // namespace

TesterReport tolerant_decide(QueryOracle& oracle, const NonadaptiveConfig& cfg, Rng& rng) {
  return run_driver(oracle, cfg, rng, false);
}

TesterReport tolerant_report(QueryOracle& oracle, const NonadaptiveConfig& cfg, Rng& rng) {
  return run_driver(oracle, cfg, rng, true);
}

}  // namespace gapmatch
