#include "gapmatch/adaptive.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "gapmatch/containers.hpp"
#include "gapmatch/errors.hpp"
#include "gapmatch/fingerprint.hpp"
#include "gapmatch/nonadaptive.hpp"
#include "gapmatch/one_execution.hpp"
#include "gapmatch/primes.hpp"

namespace gapmatch {

namespace {

constexpr Symbol kUnread = std::numeric_limits<Symbol>::max();

std::size_t clamp_count(double x) {
  if (!(x < 1e15)) return static_cast<std::size_t>(1e15);
  return static_cast<std::size_t>(std::max(1.0, std::ceil(x - 1e-9)));
}

double log_factor(Profile profile, double l2) { return profile == Profile::Paper ? std::pow(l2, 9) : l2 * l2; }

}  // namespace

AdaptiveConfig AdaptiveConfig::derive(std::size_t n, std::size_t m, std::size_t k, double c_container,
                                      Profile profile) {
  AdaptiveConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.k = k;
  cfg.c_container = std::max(1.0, c_container);
  cfg.profile = profile;
  cfg.rederive();
  return cfg;
}

void AdaptiveConfig::rederive() {
  require(m >= 1 && n >= m && k >= 1, "AdaptiveConfig: need 1 <= m <= n, k >= 1");
  delta = n - m + 1;
  const double lm = std::log2(static_cast<double>(std::max<std::size_t>(m, 2)));
  const double c = std::max(1.0, c_container);
  const double ln_n = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  if (profile == Profile::Paper) {
    epsilon = 1.0 / (20.0 * c * std::pow(lm, 4));
    D = clamp_count(90.0 / epsilon * std::log1p(static_cast<double>(delta)));
    L = clamp_count(5.0 / (epsilon * epsilon) * ln_n);
  } else {
    epsilon = 1.0 / (20.0 * c * lm);
    D = std::min<std::size_t>(60, clamp_count(90.0 / epsilon * std::log1p(static_cast<double>(delta))));
    L = std::min<std::size_t>(400, clamp_count(5.0 / (epsilon * epsilon) * ln_n));
  }
  delta_prob = epsilon / 16.0;
  const double kk = std::ceil(static_cast<double>(k) * static_cast<double>(delta) / (64.0 * n) * epsilon - 1e-12);
  k0 = kk >= 1.0 ? static_cast<std::size_t>(kk) - 1 : 0;
}

bool AdaptiveConfig::brute_branch() const {
  if (branch == FilterBranch::Brute) return true;
  if (branch == FilterBranch::Hashed) return false;
  const double bound = 10.0 * std::pow(static_cast<double>(D), 0.2) / (delta_prob * delta_prob);
  return static_cast<double>(delta) < bound || k0 == 0;
}

std::vector<std::string> AdaptiveConfig::deviations() const {
  std::vector<std::string> out;
  std::ostringstream c;
  c << "container constant c = " << c_container;
  out.push_back(c.str());
  if (profile == Profile::Desk)
    out.push_back("desk profile: epsilon uses log2 m instead of log2^4 m, D capped at 60, L capped at 400, "
                  "filter p_hat uses ceil(log2 2delta)^2");
  if (brute_branch()) out.push_back("filter: exact-intersection branch (k0 = 0 or delta below threshold)");
  return out;
}

Fragments materialize(const FragmentPair& pair, const Instance& inst) {
  Fragments f;
  f.p_frag.assign(inst.pattern.begin() + static_cast<std::ptrdiff_t>(pair.a0),
                  inst.pattern.begin() + static_cast<std::ptrdiff_t>(pair.a0 + 2 * pair.delta));
  f.t_frag.assign(inst.text.begin() + static_cast<std::ptrdiff_t>(pair.a0),
                  inst.text.begin() + static_cast<std::ptrdiff_t>(pair.a0 + 3 * pair.delta - 1));
  return f;
}

FragmentPair extract_fragments(const BlockDescriptor& block, std::size_t m, std::size_t delta) {
  require(delta >= 1 && 5 * delta <= m, "extract_fragments: need delta <= 0.2 m");
  const std::size_t left = block.start >= delta ? block.start - delta : 0;
  FragmentPair pair;
  pair.a0 = std::min(m - 2 * delta, left);
  pair.delta = delta;
  pair.origin = block;
  return pair;
}

MultiInstanceFilter::MultiInstanceFilter(QueryOracle& oracle, const AdaptiveConfig& cfg)
    : oracle_(&oracle), cfg_(cfg) {}

void MultiInstanceFilter::append(const FragmentPair& pair) {
  require(pair.delta == cfg_.delta, "MultiInstanceFilter: fragment width mismatch");
  pairs_.push_back(pair);
  p_cache_.emplace_back(2 * pair.delta, kUnread);
  t_cache_.emplace_back(3 * pair.delta - 1, kUnread);
}

bool MultiInstanceFilter::hashed_branch() const { return !cfg_.brute_branch(); }

Symbol MultiInstanceFilter::frag_p(std::size_t pair, std::size_t i) {
  Symbol& s = p_cache_[pair][i];
  if (s == kUnread) s = oracle_->pattern(pairs_[pair].a0 + i);
  return s;
}

Symbol MultiInstanceFilter::frag_t(std::size_t pair, std::size_t j) {
  Symbol& s = t_cache_[pair][j];
  if (s == kUnread) s = oracle_->text(pairs_[pair].a0 + j);
  return s;
}

double MultiInstanceFilter::expected_cost() const {
  const double delta = static_cast<double>(cfg_.delta);
  const double d = static_cast<double>(pairs_.size());
  if (pairs_.empty()) return 1.0;
  if (!hashed_branch()) return d * 5.0 * delta + delta + 1.0;
  const std::size_t np = 3 * cfg_.delta - 1, mp = 2 * cfg_.delta;
  const double l2 = std::ceil(std::log2(2.0 * delta));
  const double p_hat = cfg_.c_phat / cfg_.delta_prob * static_cast<double>(std::max<std::size_t>(cfg_.k0, 1)) *
                       log_factor(cfg_.profile, l2);
  const double z = std::ceil(std::sqrt(std::min(2.0 * p_hat, delta)));
  const double zp = std::ceil(std::min(2.0 * p_hat, delta) / z);
  const double beta_ub =
      std::min(1.0, 4.0 * std::log(static_cast<double>(np)) / static_cast<double>(std::max<std::size_t>(cfg_.k0, 1)));
  return (z * mp + 3.0 * zp * np) * beta_ub * (d + 1.0) + z + zp * 2.0 + delta + 1.0;
}

FilterRun MultiInstanceFilter::run(Rng& rng) {
  const std::size_t delta = cfg_.delta;
  FilterRun out;
  if (pairs_.empty()) {
    out.answers = AnswerSet::full(delta);
    out.ops = 1;
    return out;
  }
  if (!hashed_branch()) {
    for (; exact_pairs_ < pairs_.size(); ++exact_pairs_) {
      const std::size_t j = exact_pairs_;
      SymbolSeq p0(2 * delta), t0(3 * delta - 1);
      for (std::size_t i = 0; i < p0.size(); ++i) p0[i] = frag_p(j, i);
      for (std::size_t i = 0; i < t0.size(); ++i) t0[i] = frag_t(j, i);
      out.ops += p0.size() + t0.size();
      const PositionSet occ = occ_exact(p0, t0);
      if (j == 0) {
        exact_ = occ;
      } else {
        PositionSet both;
        std::set_intersection(exact_.begin(), exact_.end(), occ.begin(), occ.end(), std::back_inserter(both));
        exact_ = std::move(both);
      }
    }
    out.ops += exact_.size() + 1;
    out.answers = AnswerSet::from_sorted(exact_, delta);
    return out;
  }

  require(cfg_.k0 >= 1, "multi_instance_filter: hashed branch needs k0 >= 1");
  out.hashed = true;
  const std::size_t d = pairs_.size();
  const std::size_t np = 3 * delta - 1, mp = 2 * delta;
  // Zipped symbols hashed by G over a prime near [delta^9, 2 delta^9].
  const ModulusChoice gq = choose_modulus(static_cast<double>(delta), 9, oracle_->sigma(), rng);
  const FingerprintFn g = FingerprintFn::random(gq.q, std::max<std::size_t>(d, 1), rng);
  const double l2 = std::ceil(std::log2(2.0 * static_cast<double>(delta)));
  const double p_hat_d = cfg_.c_phat / cfg_.delta_prob * static_cast<double>(cfg_.k0) * log_factor(cfg_.profile, l2);
  const auto p_hat = std::max<std::uint64_t>(
      {static_cast<std::uint64_t>(std::ceil(std::min(p_hat_d, 0x1.0p61))), cfg_.k0, 2});
  const auto z = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(std::min<std::uint64_t>(2 * p_hat, delta)))));
  const ExecutionParams prm = make_execution_params(np, mp, cfg_.k0, p_hat, std::min(z, delta));
  // Hashed symbols lie in [0, q_G); F needs a modulus at least q_G.
  const ExecutionRandomness rnd = draw_execution_randomness(prm, np, mp, gq.q - 1, rng);

  const Montgomery& ar = g.arith();
  std::vector<std::uint64_t> hp(mp, kUnread), ht(np, kUnread);
  auto zipped = [&](bool pattern_side, std::size_t i) {
    std::uint64_t& slot = pattern_side ? hp[i] : ht[i];
    if (slot != kUnread) return slot;
    std::uint64_t v = 0, pw = g.one_mont();
    for (std::size_t j = 0; j < d; ++j) {
      const Symbol s = pattern_side ? frag_p(j, i) : frag_t(j, i);
      v = ar.add(v, ar.mul(s % gq.q, pw));
      pw = ar.mul(pw, g.x_mont());
    }
    out.ops += d;
    return slot = v;
  };
  ExecutionOutcome ex = run_execution([&](std::size_t i) { return zipped(true, i); },
                                      [&](std::size_t i) { return zipped(false, i); }, np, mp, prm, rnd);
  out.ops += ex.ops;
  out.answers = std::move(ex.answers);
  return out;
}

AnswerSet multi_instance_filter(QueryOracle& oracle, const std::vector<FragmentPair>& pairs,
                                const AdaptiveConfig& cfg, Rng& rng) {
  MultiInstanceFilter filter(oracle, cfg);
  for (const FragmentPair& p : pairs) filter.append(p);
  return filter.run(rng).answers;
}

Candidate sample_candidate(MultiInstanceFilter& filter, Rng& rng, std::uint64_t op_budget) {
  FilterRun r = filter.run(rng);
  Candidate c;
  if (op_budget != 0 && r.ops > op_budget) {
    c.position = 0;
    c.budget_breach = true;
    return c;
  }
  if (!r.answers.empty()) c.position = r.answers.at(static_cast<std::size_t>(rng.below(r.answers.size())));
  return c;
}

CandidateBatch draw_candidates(MultiInstanceFilter& filter, std::size_t count, Rng& rng) {
  CandidateBatch batch;
  const double budget = 10.0 * static_cast<double>(count) * filter.expected_cost();
  batch.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    FilterRun r = filter.run(rng);
    batch.ops += r.ops;
    if (static_cast<double>(batch.ops) > budget) {
      batch.budget_breach = true;
      batch.samples.assign(count, std::size_t{0});
      return batch;
    }
    if (r.answers.empty())
      batch.samples.emplace_back(std::nullopt);
    else
      batch.samples.emplace_back(r.answers.at(static_cast<std::size_t>(rng.below(r.answers.size()))));
  }
  return batch;
}

namespace {

BlockDescriptor block_of(Side side, std::size_t pos, std::size_t delta, std::size_t len) {
  BlockDescriptor b;
  b.side = side;
  b.index = pos / delta;
  b.start = b.index * delta;
  b.end = std::min(b.start + delta, len);
  return b;
}

}  // namespace

BlockDescriptor find_good_block(const std::vector<std::size_t>& samples, QueryOracle& oracle,
                                const AdaptiveConfig& cfg, Rng& rng) {
  const std::size_t n = oracle.n(), m = oracle.m(), delta = oracle.delta();
  std::vector<std::pair<std::size_t, std::size_t>> hist;  // (x, multiplicity)
  {
    std::vector<std::size_t> sorted(samples);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t x : sorted) {
      if (!hist.empty() && hist.back().first == x)
        ++hist.back().second;
      else
        hist.emplace_back(x, 1);
    }
  }
  const double need = 3.0 * cfg.epsilon * static_cast<double>(samples.size());
  const auto attempts = static_cast<std::size_t>(std::ceil(80.0 * n / static_cast<double>(oracle.k())));
  for (std::size_t a = 1; a <= attempts; ++a) {
    const std::size_t idx = static_cast<std::size_t>(rng.below(n + m));
    std::size_t hit = 0;
    if (idx < n) {
      const std::size_t i = idx;
      const Symbol ti = oracle.text(i);
      for (const auto& [x, c] : hist) {
        if (x > i || i - x >= m) continue;
        if (oracle.pattern(i - x) != ti) hit += c;
        if (static_cast<double>(hit) >= need) break;
      }
    } else {
      const std::size_t j = idx - n;
      const Symbol pj = oracle.pattern(j);
      for (const auto& [x, c] : hist) {
        if (oracle.text(j + x) != pj) hit += c;
        if (static_cast<double>(hit) >= need) break;
      }
    }
    if (hit > 0 && static_cast<double>(hit) >= need) {
      BlockDescriptor b = idx < n ? block_of(Side::Text, idx, delta, n) : block_of(Side::Pattern, idx - n, delta, m);
      b.verified = true;
      b.attempts = a;
      return b;
    }
  }
  const std::size_t idx = static_cast<std::size_t>(rng.below(n + m));
  BlockDescriptor b = idx < n ? block_of(Side::Text, idx, delta, n) : block_of(Side::Pattern, idx - n, delta, m);
  b.verified = false;
  b.attempts = attempts;
  return b;
}

PotentialEstimate estimate_potential(MultiInstanceFilter& filter, Rng& rng, std::size_t trials) {
  require(trials >= 1, "estimate_potential: need trials >= 1");
  double sum = 0.0, sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double v = std::log1p(static_cast<double>(filter.run(rng).answers.size()));
    sum += v;
    sq += v * v;
  }
  PotentialEstimate est;
  est.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var = std::max(0.0, (sq - sum * est.mean) / static_cast<double>(trials - 1));
    est.radius = 1.96 * std::sqrt(var / static_cast<double>(trials));
  }
  return est;
}

TesterReport adaptive_test(QueryOracle& oracle, const AdaptiveConfig& cfg_in, Rng& rng) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const std::uint64_t p0 = oracle.pattern_queries(), t0 = oracle.text_queries();
  const std::size_t n = oracle.n(), m = oracle.m(), delta = oracle.delta();
  AdaptiveConfig cfg = cfg_in;
  if (cfg.n != n || cfg.m != m || cfg.k != oracle.k()) {
    cfg.n = n;
    cfg.m = m;
    cfg.k = oracle.k();
    cfg.rederive();
  }
  auto finish = [&](TesterReport& rep) {
    rep.queries_pattern = oracle.pattern_queries() - p0;
    rep.queries_text = oracle.text_queries() - t0;
    rep.wall_time_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
  };

  if (10 * delta > n) {
    NonadaptiveConfig nc;
    nc.profile = cfg.profile;
    nc.c_phat = cfg.c_phat;
    nc.kprime_override = 0;
    TesterReport rep = tolerant_decide(oracle, nc, rng);
    rep.note("delta > 0.1 n: delegated to the non-adaptive tester with k' = 0");
    finish(rep);
    return rep;
  }
  if (n < 64) {
    TesterReport rep;
    Instance copy;
    copy.sigma = oracle.sigma();
    copy.k = oracle.k();
    copy.pattern.resize(m);
    copy.text.resize(n);
    for (std::size_t j = 0; j < m; ++j) copy.pattern[j] = oracle.pattern(j);
    for (std::size_t i = 0; i < n; ++i) copy.text[i] = oracle.text(i);
    rep.answer = occ_k_bruteforce(copy, copy.k).empty() ? Answer::No : Answer::Yes;
    rep.note("n < 64: brute force");
    finish(rep);
    return rep;
  }

  TesterReport rep;
  for (const std::string& d : cfg.deviations()) rep.note(d);
  MultiInstanceFilter filter(oracle, cfg);
  rep.answer = Answer::Yes;
  for (std::size_t iter = 0; iter < cfg.D; ++iter) {
    CandidateBatch batch = draw_candidates(filter, cfg.L, rng);
    ++rep.executions;
    if (batch.budget_breach) ++rep.executions_aborted;
    const bool bottom = std::any_of(batch.samples.begin(), batch.samples.end(),
                                    [](const std::optional<std::size_t>& s) { return !s.has_value(); });
    double potential = 0.0;
    if (cfg.trace) potential = estimate_potential(filter, rng, cfg.potential_trials).mean;
    if (bottom) {
      if (cfg.trace) {
        std::ostringstream line;
        line << iter << ",-,-,-," << cfg.k0 << ",1," << potential;
        rep.trace.push_back(line.str());
      }
      rep.answer = Answer::No;
      break;
    }
    std::vector<std::size_t> samples;
    samples.reserve(batch.samples.size());
    for (const auto& s : batch.samples) samples.push_back(*s);
    const BlockDescriptor block = find_good_block(samples, oracle, cfg, rng);
    const FragmentPair pair = extract_fragments(block, m, delta);
    filter.append(pair);
    if (cfg.trace) {
      std::ostringstream line;
      line << iter << ',' << (block.side == Side::Text ? 'T' : 'P') << ',' << block.index << ',' << pair.a0 << ','
           << cfg.k0 << ",0," << potential;
      rep.trace.push_back(line.str());
    }
  }
  finish(rep);
  return rep;
}

EliminationMass elimination_mass(const Instance& inst, const std::vector<double>& weights) {
  const std::size_t n = inst.n(), m = inst.m(), delta = inst.delta();
  require(weights.size() == delta, "elimination_mass: need one weight per alignment");
  EliminationMass mass;
  mass.text.assign(n, 0.0);
  mass.pattern.assign(m, 0.0);
  for (std::size_t x = 0; x < delta; ++x) {
    if (weights[x] == 0.0) continue;
    for (std::size_t j = 0; j < m; ++j)
      if (inst.pattern[j] != inst.text[x + j]) {
        mass.text[x + j] += weights[x];
        mass.pattern[j] += weights[x];
      }
  }
  return mass;
}

std::size_t count_good_positions(const EliminationMass& mass, double threshold) {
  std::size_t c = 0;
  for (double v : mass.text) c += v >= threshold;
  for (double v : mass.pattern) c += v >= threshold;
  return c;
}

std::vector<BlockDescriptor> good_blocks(const EliminationMass& mass, std::size_t delta, double threshold,
                                         double min_count) {
  std::vector<BlockDescriptor> out;
  auto scan = [&](Side side, const std::vector<double>& v) {
    for (std::size_t start = 0; start < v.size(); start += delta) {
      const std::size_t end = std::min(start + delta, v.size());
      std::size_t c = 0;
      for (std::size_t i = start; i < end; ++i) c += v[i] >= threshold;
      if (static_cast<double>(c) >= min_count) {
        BlockDescriptor b;
        b.side = side;
        b.index = start / delta;
        b.start = start;
        b.end = end;
        b.verified = true;
        out.push_back(b);
      }
    }
  };
  scan(Side::Text, mass.text);
  scan(Side::Pattern, mass.pattern);
  return out;
}

double calibrate_container_constant(std::uint64_t seed, std::size_t battery) {
  double c = 1.0;
  for (std::size_t b = 0; b < battery; ++b) {
    Rng rng(derive_seed(seed, b));
    const std::size_t n = 240, m = 80, k = 4;
    Instance inst;
    inst.sigma = 2;
    inst.k = k;
    inst.pattern.resize(m);
    inst.text.resize(n);
    for (auto& s : inst.pattern) s = rng.bernoulli(2.0 * k / m);
    for (auto& s : inst.text) s = rng.bernoulli(2.0 * k / m);
    const ContainerSet M = mismatch_container(inst, k, rng);
    const double lm = std::log2(static_cast<double>(m));
    c = std::max(c, static_cast<double>(M.positions.size()) * m / (static_cast<double>(n) * k * std::pow(lm, 4)));
  }
  return c;
}

}  // namespace gapmatch
