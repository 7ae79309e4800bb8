#include "gapmatch/containers.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gapmatch/errors.hpp"
#include "gapmatch/instance_io.hpp"
#include "gapmatch/primes.hpp"
#include "gapmatch/sync_set.hpp"

namespace gapmatch {

namespace {

PositionSet full_range(std::size_t n) {
  PositionSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

void sort_unique(PositionSet& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

PositionSet set_union(const PositionSet& a, const PositionSet& b) {
  PositionSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

double log2d(std::size_t x) { return std::log2(static_cast<double>(std::max<std::size_t>(x, 2))); }


std::size_t draw_count(std::size_t n) { return static_cast<std::size_t>(std::ceil(10.0 * log2d(n))); }

// Visits every window pair (i, i+s), s >= 1, with (HD, covered mismatches).
// Stops when visit returns false; returns whether the scan completed.
template <class Visit>
bool scan_pairs(SymbolView s, std::size_t m, const PositionSet& positions, Visit&& visit) {
  const std::size_t n = s.size();
  if (m > n) return true;
  std::vector<std::uint8_t> mark(n, 0);
  for (std::size_t p : positions) mark[p] = 1;
  const std::size_t last = n - m;
  for (std::size_t sh = 1; sh <= last; ++sh) {
    std::size_t hd = 0, cov = 0;
    for (std::size_t d = 0; d < m; ++d)
      if (s[d] != s[sh + d]) {
        ++hd;
        cov += mark[d] | mark[sh + d];
      }
    for (std::size_t i = 0;; ++i) {
      if (!visit(i, i + sh, hd, cov)) return false;
      if (i + sh == last) break;
      if (s[i] != s[i + sh]) {
        --hd;
        cov -= mark[i] | mark[i + sh];
      }
      if (s[i + m] != s[i + sh + m]) {
        ++hd;
        cov += mark[i + m] | mark[i + sh + m];
      }
    }
  }
  return true;
}

}  // namespace

std::vector<Run> tau_runs(SymbolView s, std::size_t tau) {
  std::vector<Run> out;
  const std::size_t n = s.size();
  const std::size_t pmax = tau / 3;
  if (pmax == 0 || 3 * tau - 1 > n) return out;
  // run[p][t] = consecutive t' >= t with s[t'] = s[t'+p].
  std::vector<std::vector<std::size_t>> run(pmax + 1);
  for (std::size_t p = 1; p <= pmax && p < n; ++p) {
    auto& r = run[p];
    r.assign(n - p + 1, 0);
    for (std::size_t t = n - p; t-- > 0;) r[t] = s[t] == s[t + p] ? r[t + 1] + 1 : 0;
  }
  for (std::size_t p = 1; p <= pmax && p < n; ++p) {
    const auto& r = run[p];
    for (std::size_t a = 0; a + p < n;) {
      if (r[a] == 0) {
        ++a;
        continue;
      }
      const std::size_t end = a + r[a] + p;
      const std::size_t len = end - a;
      if (len >= 3 * tau - 1) {
        bool primitive = true;
        for (std::size_t d = 1; d < p && primitive; ++d)
          if (p % d == 0 && run[d][a] >= len - d) primitive = false;
        if (primitive) out.push_back({a, end, p});
      }
      a += r[a];
    }
  }
  std::sort(out.begin(), out.end(), [](const Run& x, const Run& y) {
    return x.start != y.start ? x.start < y.start : x.end < y.end;
  });
  return out;
}

PositionSet light_positions(SymbolView s, const PositionSet& starts, bool reversed) {
  const std::size_t n = s.size();
  PositionSet out;
  if (starts.size() <= 1) return out;
  auto has = [&](std::size_t i, std::size_t d) { return reversed ? d < i : i + d < n; };
  auto at = [&](std::size_t i, std::size_t d) { return reversed ? s[i - 1 - d] : s[i + d]; };
  auto lce = [&](std::size_t a, std::size_t b) {
    std::size_t d = 0;
    while (has(a, d) && has(b, d) && at(a, d) == at(b, d)) ++d;
    return d;
  };
  std::vector<std::size_t> order(starts.begin(), starts.end());
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const std::size_t d = lce(a, b);
    const bool ha = has(a, d), hb = has(b, d);
    if (!ha || !hb) return !ha && hb;  // end of string sorts first
    return at(a, d) < at(b, d);
  });
  const std::size_t cnt = order.size();
  std::vector<std::size_t> lcp(cnt, 0);
  for (std::size_t t = 1; t < cnt; ++t) lcp[t] = lce(order[t - 1], order[t]);

  // Leaves [l, r) of a trie node; its string depth is min lcp over (l, r).
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, cnt}};
  while (!stack.empty()) {
    const auto [l, r] = stack.back();
    stack.pop_back();
    std::size_t h = lcp[l + 1];
    for (std::size_t t = l + 2; t < r; ++t) h = std::min(h, lcp[t]);
    std::size_t cl = l;
    for (std::size_t t = l + 1; t <= r; ++t) {
      if (t < r && lcp[t] != h) continue;
      const std::size_t size = t - cl;
      if (2 * size <= r - l) {
        for (std::size_t x = cl; x < t; ++x) {
          const std::size_t i = order[x];
          if (reversed) {
            if (i >= h + 1) out.push_back(i - 1 - h);
          } else if (i + h < n) {
            out.push_back(i + h);
          }
        }
      }
      if (size >= 2) stack.emplace_back(cl, t);
      cl = t;
    }
  }
  sort_unique(out);
  return out;
}

ContainerSet one_mismatch_container(SymbolView s, std::size_t m, Rng& rng, const ContainerConfig& cfg) {
  const std::size_t n = s.size();
  require(m >= 1 && m <= n, "one_mismatch_container: need 1 <= m <= n");
  ContainerSet out;
  out.n = n;
  out.draws = 1;
  out.budget = cfg.c_size * (static_cast<double>(n) / m) * std::log2(2.0 * n / m);
  if (m < 6) {
    out.positions = full_range(n);
    out.fallback = true;
    return out;
  }
  const std::size_t tau = m / 6;
  PositionSet pos;
  for (const Run& r : tau_runs(s, tau)) {
    if (r.start >= 1) pos.push_back(r.start - 1);
    if (r.end < n) pos.push_back(r.end);
  }
  const SyncSet sync = sync_set(s, tau, rng, cfg.sync_retry_cap);
  const PositionSet fwd = light_positions(s, sync.positions, false);
  const PositionSet rev = light_positions(s, sync.positions, true);
  pos.insert(pos.end(), fwd.begin(), fwd.end());
  pos.insert(pos.end(), rev.begin(), rev.end());
  sort_unique(pos);
  out.positions = std::move(pos);
  return out;
}

ContainerSet k_mismatch_container(SymbolView s, std::size_t m, std::size_t k, Rng& rng,
                                  const ContainerConfig& cfg) {
  const std::size_t n = s.size();
  require(m >= 1 && m <= n && k >= 1, "k_mismatch_container: need 1 <= m <= n, k >= 1");
  const double l2 = log2d(n);
  const auto p_hat = std::max<std::uint64_t>(
      2, static_cast<std::uint64_t>(std::ceil(cfg.c_prime * static_cast<double>(k) * std::ceil(l2))));
  ContainerSet out;
  out.n = n;
  out.draws = 1;
  if (static_cast<double>(m) < 2.0 * static_cast<double>(p_hat) ||
      static_cast<double>(k) * l2 * l2 >= cfg.c_fallback * static_cast<double>(m)) {
    out.positions = full_range(n);
    out.fallback = true;
    return out;
  }
  const std::uint64_t p = random_prime(p_hat, 2 * p_hat, rng);
  // order[x] = source position of permuted index x, sorted by (j mod p, j).
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::uint64_t r = 0; r < p && r < n; ++r)
    for (std::size_t j = static_cast<std::size_t>(r); j < n; j += static_cast<std::size_t>(p)) order.push_back(j);
  SymbolSeq permuted(n);
  for (std::size_t x = 0; x < n; ++x) permuted[x] = s[order[x]];
  const std::size_t m_hat = m / static_cast<std::size_t>(p);
  const ContainerSet inner = one_mismatch_container(permuted, m_hat, rng, cfg);
  out.positions.reserve(inner.positions.size());
  for (std::size_t x : inner.positions) out.positions.push_back(order[x]);
  sort_unique(out.positions);
  out.fallback = inner.fallback;
  return out;
}

ContainerSet container_below(SymbolView s, std::size_t m, std::size_t k, Rng& rng, const ContainerConfig& cfg) {
  const std::size_t n = s.size();
  const std::size_t draws = draw_count(n);
  ContainerSet out;
  out.n = n;
  for (std::size_t attempt = 0; attempt <= cfg.retry_cap; ++attempt) {
    const std::uint64_t base = rng();
    PositionSet acc;
    bool fallback = false;
    std::size_t made = 0;
    for (std::size_t d = 0; d < draws; ++d) {
      Rng dr(derive_seed(base, d));
      ContainerSet one = k_mismatch_container(s, m, k, dr, cfg);
      ++made;
      acc = set_union(acc, one.positions);
      if (one.fallback && one.positions.size() == n) {
        fallback = true;
        break;  // the fallback rule is deterministic: every draw is the full range
      }
    }
    out.draws += made;
    if (fallback || pairs_fully_covered(s, m, k, acc)) {
      out.positions = std::move(acc);
      out.fallback = fallback;
      out.redraws = attempt;
      return out;
    }
  }
  throw ConstructionError("container_below: retry cap exhausted", out.draws);
}

ContainerSet container_above(SymbolView s, std::size_t m, std::size_t k, Rng& rng, const ContainerConfig& cfg) {
  const std::size_t n = s.size();
  const std::size_t kk = std::max<std::size_t>(k, 20);
  const std::size_t draws = draw_count(n);
  ContainerSet out;
  out.n = n;
  for (std::size_t attempt = 0; attempt <= cfg.retry_cap; ++attempt) {
    ContainerSet below = container_below(s, m, 4 * kk, rng, cfg);
    out.draws += below.draws;
    PositionSet acc = std::move(below.positions);
    bool full = acc.size() == n;
    for (std::size_t big = 8 * kk; big <= 2 * m && !full; big *= 2) {
      const double rate = 8.0 * static_cast<double>(kk) / static_cast<double>(big);
      const std::uint64_t base = rng();
      for (std::size_t d = 0; d < draws && !full; ++d) {
        Rng dr(derive_seed(base, d));
        ContainerSet one = k_mismatch_container(s, m, big, dr, cfg);
        ++out.draws;
        PositionSet kept;
        for (std::size_t x : one.positions)
          if (dr.bernoulli(rate)) kept.push_back(x);
        acc = set_union(acc, kept);
        full = acc.size() == n;
      }
    }
    if (full || pairs_capped_covered(s, m, k, acc)) {
      out.positions = std::move(acc);
      out.fallback = below.fallback;
      out.redraws = attempt;
      return out;
    }
  }
  throw ConstructionError("container_above: retry cap exhausted", out.draws);
}

ContainerSet mismatch_container(const Instance& inst, std::size_t k, Rng& rng, const ContainerConfig& cfg) {
  const std::size_t n = inst.n(), m = inst.m();
  SymbolSeq joined;
  joined.reserve(n + m);
  joined.insert(joined.end(), inst.pattern.begin(), inst.pattern.end());
  joined.insert(joined.end(), inst.text.begin(), inst.text.end());
  ContainerSet out;
  out.n = n;
  out.budget = container_size_bound(n, m, k);
  for (std::size_t attempt = 0; attempt <= cfg.retry_cap; ++attempt) {
    ContainerSet above = container_above(joined, m, k, rng, cfg);
    out.draws += above.draws;
    PositionSet pos;
    for (std::size_t x : above.positions) {
      if (x < n) pos.push_back(x);
      if (x >= m) pos.push_back(x - m);
    }
    sort_unique(pos);
    CoverageCertificate cert = verify_container(inst, pos, k);
    if (cert.pass) {
      out.positions = std::move(pos);
      out.fallback = above.fallback;
      out.redraws = attempt;
      out.verified = std::move(cert);
      return out;
    }
  }
  throw ConstructionError("mismatch_container: retry cap exhausted", out.draws);
}

bool pairs_fully_covered(SymbolView s, std::size_t m, std::size_t k, const PositionSet& positions) {
  return scan_pairs(s, m, positions,
                    [&](std::size_t, std::size_t, std::size_t hd, std::size_t cov) { return hd > k || cov == hd; });
}

bool pairs_capped_covered(SymbolView s, std::size_t m, std::size_t k, const PositionSet& positions) {
  return scan_pairs(s, m, positions, [&](std::size_t, std::size_t, std::size_t hd, std::size_t cov) {
    return cov >= std::min(k, hd);
  });
}

CoverageCertificate verify_container(const Instance& inst, const PositionSet& positions, std::size_t threshold) {
  return verify_container(inst, positions, positions, threshold);
}

CoverageCertificate verify_container(const Instance& inst, const PositionSet& pattern_part,
                                     const PositionSet& text_part, std::size_t threshold) {
  const std::size_t n = inst.n(), m = inst.m();
  std::vector<std::uint8_t> in_p(m, 0), in_t(n, 0);
  for (std::size_t x : pattern_part)
    if (x < m) in_p[x] = 1;
  for (std::size_t x : text_part)
    if (x < n) in_t[x] = 1;
  CoverageCertificate cert;
  cert.threshold = threshold;
  for (std::size_t i = 0; i < inst.delta(); ++i) {
    std::size_t hd = 0, cov = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (inst.pattern[j] != inst.text[i + j]) {
        ++hd;
        cov += in_p[j] | in_t[i + j];
      }
    const std::size_t need = std::min(threshold, hd);
    if (cov < need) cert.violations.push_back({i, cov, need});
  }
  cert.pass = cert.violations.empty();
  return cert;
}

double container_size_bound(std::size_t n, std::size_t m, std::size_t k) {
  const double l = log2d(n);
  return 8.0 * (static_cast<double>(n) / m) * static_cast<double>(k) * l * l * l * l;
}

double container_ratio(std::size_t size, std::size_t n, std::size_t m, std::size_t k) {
  const double l = log2d(n);
  return static_cast<double>(size) * m / (static_cast<double>(n) * k * l * l * l * l);
}

void write_container(std::ostream& out, const PositionSet& positions, const ContainerHeader& h) {
  out << "# n=" << h.n << " m=" << h.m << " k=" << h.k << " seed=" << h.seed << '\n';
  for (std::size_t i = 0; i < positions.size(); ++i) out << (i ? " " : "") << positions[i];
  out << '\n';
}

PositionSet read_container(std::istream& in, ContainerHeader* h) {
  PositionSet out;
  Metadata meta;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream ss(line.substr(first + 1));
      std::string tok;
      while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq != std::string::npos) meta_set(meta, tok.substr(0, eq), tok.substr(eq + 1));
      }
      continue;
    }
    for (std::uint64_t v : parse_integers(line)) out.push_back(static_cast<std::size_t>(v));
  }
  if (!std::is_sorted(out.begin(), out.end()) || std::adjacent_find(out.begin(), out.end()) != out.end())
    throw ParseError("container positions must be strictly increasing");
  if (h) {
    auto num = [&](const char* key) -> std::uint64_t {
      const auto v = meta_get(meta, key);
      if (!v) return 0;
      const auto parsed = parse_integers(*v);
      if (parsed.size() != 1) throw ParseError(std::string("bad container header field ") + key);
      return parsed[0];
    };
    h->n = num("n");
    h->m = num("m");
    h->k = num("k");
    h->seed = num("seed");
  }
  return out;
}

}  // namespace gapmatch
