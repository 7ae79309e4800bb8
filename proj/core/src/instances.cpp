#include "gapmatch/instances.hpp"

#include <algorithm>
#include <cmath>

#include "gapmatch/errors.hpp"

namespace gapmatch {

namespace {

bool in_regime(std::size_t n, std::size_t m, std::size_t k) {
  return 4.0 * std::log(5.0 * static_cast<double>(n)) < static_cast<double>(k) && 4 * k <= m;
}

// Clamps k into [1, m) and records whether the request was usable as is.
LabeledInstance start(std::size_t n, std::size_t m, std::size_t k, const std::string& name) {
  require(m >= 2 && n >= m, "generator: need 2 <= m <= n");
  LabeledInstance li;
  li.dist_name = name;
  li.k_exact = k >= 1 && k < m;
  li.regime_ok = li.k_exact && in_regime(n, m, k);
  li.instance.k = std::clamp<std::size_t>(k, 1, m - 1);
  li.instance.kprime = 0;
  li.instance.sigma = 2;
  return li;
}

SymbolSeq bernoulli_seq(std::size_t len, double rate, Rng& rng) {
  SymbolSeq s(len);
  for (Symbol& x : s) x = rng.bernoulli(rate) ? 1 : 0;
  return s;
}

void plant_window(LabeledInstance& li, Rng& rng) {
  Instance& inst = li.instance;
  const std::size_t t = static_cast<std::size_t>(rng.below(inst.delta()));
  std::copy_n(inst.text.begin() + static_cast<std::ptrdiff_t>(t), inst.m(), inst.pattern.begin());
  li.plant = t;
}

void finish(LabeledInstance& li, VerifyMode verify) {
  li.instance.validate();
  const double size = static_cast<double>(li.instance.n()) * static_cast<double>(li.instance.m());
  if (verify == VerifyMode::Always || (verify == VerifyMode::Auto && size <= kVerifyLimit)) verify_labels(li);
}

void mark_exact(LabeledInstance& li) {
  if (!li.k_exact) return;
  li.truth_exact = {true, true};
  li.truth_kfar = {false, true};
}

}  // namespace

void verify_labels(LabeledInstance& li) {
  if (!li.k_exact) return;
  const Instance& inst = li.instance;
  li.truth_exact = {!occ_exact(inst.pattern, inst.text).empty(), true};
  li.truth_kfar = {occ_k_bruteforce(inst, inst.k).empty(), true};
}

LabeledInstance gen_bernoulli_family(FamilyKind kind, std::size_t n, std::size_t m, std::size_t k, Rng& rng,
                                     VerifyMode verify) {
  if (kind == FamilyKind::Mixed) kind = rng.bernoulli(0.5) ? FamilyKind::Planted : FamilyKind::Random;
  LabeledInstance li = start(n, m, k, kind == FamilyKind::Planted ? "planted" : "random");
  const double rate = std::min(1.0, 2.0 * static_cast<double>(k) / static_cast<double>(m));
  li.instance.pattern = bernoulli_seq(m, rate, rng);
  li.instance.text = bernoulli_seq(n, rate, rng);
  if (kind == FamilyKind::Planted) {
    plant_window(li, rng);
    mark_exact(li);
  }
  finish(li, verify);
  return li;
}

LabeledInstance gen_hybrid_family(HybridKind kind, std::size_t n, std::size_t m, std::size_t k, Rng& rng,
                                  VerifyMode verify) {
  if (kind == HybridKind::Hybrid) kind = rng.bernoulli(0.5) ? HybridKind::Equal : HybridKind::Independent;
  LabeledInstance li = start(n, m, k, kind == HybridKind::Equal ? "hybrid-equal" : "hybrid-indep");
  const std::size_t delta = n - m + 1;
  const std::size_t s = std::min(m, std::max(4 * k, delta));
  const std::size_t p = static_cast<std::size_t>(rng.below(m - s + 1));
  const std::size_t t = static_cast<std::size_t>(rng.below(delta));
  const double rate = std::min(1.0, 2.0 * static_cast<double>(k) / static_cast<double>(s));
  const SymbolSeq sp = bernoulli_seq(s, rate, rng);
  const SymbolSeq st = kind == HybridKind::Equal ? sp : bernoulli_seq(s, rate, rng);
  li.instance.pattern.assign(m, 0);
  li.instance.text.assign(n, 0);
  std::copy(sp.begin(), sp.end(), li.instance.pattern.begin() + static_cast<std::ptrdiff_t>(p));
  std::copy(st.begin(), st.end(), li.instance.text.begin() + static_cast<std::ptrdiff_t>(p + t));
  if (kind == HybridKind::Equal) {
    li.plant = t;
    mark_exact(li);
  }
  finish(li, verify);
  return li;
}

LabeledInstance gen_large_alphabet(FamilyKind kind, std::size_t n, std::size_t m, Rng& rng, VerifyMode verify) {
  if (kind == FamilyKind::Mixed) kind = rng.bernoulli(0.5) ? FamilyKind::Planted : FamilyKind::Random;
  LabeledInstance li = start(n, m, m - 1, kind == FamilyKind::Planted ? "large-alpha-planted" : "large-alpha-random");
  const std::uint64_t top = 10 * static_cast<std::uint64_t>(n) * n;
  li.instance.sigma = top + 1;
  li.instance.pattern.resize(m);
  li.instance.text.resize(n);
  for (Symbol& x : li.instance.pattern) x = rng.range(1, top + 1);
  for (Symbol& x : li.instance.text) x = rng.range(1, top + 1);
  if (kind == FamilyKind::Planted) {
    plant_window(li, rng);
    mark_exact(li);
  }
  finish(li, verify);
  return li;
}

LabeledInstance gen_planted_noisy(std::size_t n, std::size_t m, std::size_t k, std::size_t kprime, Rng& rng,
                                  VerifyMode verify) {
  require(kprime < k, "gen_planted_noisy: need kprime < k");
  LabeledInstance li = start(n, m, k, "planted-noisy");
  li.instance.kprime = std::min(kprime, li.instance.k - 1);
  const double rate = std::min(1.0, 2.0 * static_cast<double>(k) / static_cast<double>(m));
  li.instance.pattern.assign(m, 0);
  li.instance.text = bernoulli_seq(n, rate, rng);
  plant_window(li, rng);
  // Partial Fisher-Yates: the first kprime entries are distinct uniform positions.
  std::vector<std::size_t> idx(m);
  for (std::size_t j = 0; j < m; ++j) idx[j] = j;
  for (std::size_t j = 0; j < li.instance.kprime; ++j) {
    std::swap(idx[j], idx[j + static_cast<std::size_t>(rng.below(m - j))]);
    li.instance.pattern[idx[j]] ^= 1;
  }
  if (li.k_exact) li.truth_kfar = {false, true};  // HD at the plant is kprime < k
  if (li.instance.kprime == 0) mark_exact(li);
  finish(li, verify);
  return li;
}

bool is_distribution(const std::string& d) {
  static const char* names[] = {"random",      "planted",     "mixed",
                                "hybrid-equal", "hybrid-indep", "hybrid",
                                "large-alpha", "large-alpha-random", "large-alpha-planted",
                                "planted-noisy"};
  return std::any_of(std::begin(names), std::end(names), [&](const char* s) { return d == s; });
}

LabeledInstance generate(const std::string& d, std::size_t n, std::size_t m, std::size_t k, std::size_t kprime,
                         std::uint64_t seed, VerifyMode verify) {
  Rng rng(seed);
  LabeledInstance li;
  if (d == "random") li = gen_bernoulli_family(FamilyKind::Random, n, m, k, rng, verify);
  else if (d == "planted") li = gen_bernoulli_family(FamilyKind::Planted, n, m, k, rng, verify);
  else if (d == "mixed") li = gen_bernoulli_family(FamilyKind::Mixed, n, m, k, rng, verify);
  else if (d == "hybrid-equal") li = gen_hybrid_family(HybridKind::Equal, n, m, k, rng, verify);
  else if (d == "hybrid-indep") li = gen_hybrid_family(HybridKind::Independent, n, m, k, rng, verify);
  else if (d == "hybrid") li = gen_hybrid_family(HybridKind::Hybrid, n, m, k, rng, verify);
  else if (d == "large-alpha") li = gen_large_alphabet(FamilyKind::Mixed, n, m, rng, verify);
  else if (d == "large-alpha-random") li = gen_large_alphabet(FamilyKind::Random, n, m, rng, verify);
  else if (d == "large-alpha-planted") li = gen_large_alphabet(FamilyKind::Planted, n, m, rng, verify);
  else if (d == "planted-noisy") li = gen_planted_noisy(n, m, k, kprime, rng, verify);
  else throw PreconditionError("unknown distribution: " + d);
  li.seed = seed;
  return li;
}

namespace {

std::string label_str(const Label& l) {
  if (!l.value) return "unknown";
  return *l.value ? "1" : "0";
}

Label label_parse(const std::optional<std::string>& v, const std::optional<std::string>& verified) {
  Label l;
  if (v && (*v == "0" || *v == "1")) l.value = *v == "1";
  l.verified = l.value.has_value() && verified && *verified == "1";
  return l;
}

}  // namespace

Metadata to_metadata(const LabeledInstance& li) {
  Metadata meta;
  meta_set(meta, "dist", li.dist_name);
  meta_set(meta, "seed", std::to_string(li.seed));
  meta_set(meta, "plant", li.plant ? std::to_string(*li.plant) : "none");
  meta_set(meta, "truth_exact", label_str(li.truth_exact));
  meta_set(meta, "truth_exact_verified", li.truth_exact.verified ? "1" : "0");
  meta_set(meta, "truth_kfar", label_str(li.truth_kfar));
  meta_set(meta, "truth_kfar_verified", li.truth_kfar.verified ? "1" : "0");
  meta_set(meta, "regime_ok", li.regime_ok ? "1" : "0");
  meta_set(meta, "k_exact", li.k_exact ? "1" : "0");
  return meta;
}

LabeledInstance from_file(const InstanceFile& file) {
  LabeledInstance li;
  li.instance = file.instance;
  const Metadata& meta = file.meta;
  li.dist_name = meta_get(meta, "dist").value_or("unknown");
  if (auto s = meta_get(meta, "seed")) {
    try {
      li.seed = std::stoull(*s);
    } catch (const std::exception&) {
      throw ParseError("bad seed field: " + *s);
    }
  }
  if (auto p = meta_get(meta, "plant"); p && *p != "none") {
    try {
      li.plant = static_cast<std::size_t>(std::stoull(*p));
    } catch (const std::exception&) {
      throw ParseError("bad plant field: " + *p);
    }
  }
  li.truth_exact = label_parse(meta_get(meta, "truth_exact"), meta_get(meta, "truth_exact_verified"));
  li.truth_kfar = label_parse(meta_get(meta, "truth_kfar"), meta_get(meta, "truth_kfar_verified"));
  li.regime_ok = meta_get(meta, "regime_ok").value_or("1") == "1";
  li.k_exact = meta_get(meta, "k_exact").value_or("1") == "1";
  return li;
}

}  // namespace gapmatch
