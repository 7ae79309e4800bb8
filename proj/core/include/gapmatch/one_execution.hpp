#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "gapmatch/answer_set.hpp"
#include "gapmatch/fingerprint.hpp"
#include "gapmatch/query_oracle.hpp"
#include "gapmatch/residues.hpp"
#include "gapmatch/rng.hpp"

namespace gapmatch {

struct ExecutionParams {
  std::uint64_t p_hat = 2;    // p is drawn from [p_hat, 2 p_hat]
  std::size_t z = 1;          // 1 <= z <= min(p_hat, delta)
  std::size_t z_prime = 1;    // ceil(min(2 p_hat, delta) / z)
  double beta = 0.0;          // 1 - n^{-4/k}
  std::uint64_t op_budget = 0;  // 0 = unlimited
};

// beta = 1 - n^{-4/k}, evaluated as -expm1(-4 ln n / k).
double sampling_rate(std::size_t n, std::size_t k);

ExecutionParams make_execution_params(std::size_t n, std::size_t m, std::size_t k, std::uint64_t p_hat,
                                      std::size_t z);

// The random choices of one execution: prime p, residue sample B, fingerprint F.
struct ExecutionRandomness {
  std::uint64_t p = 2;
  ResidueWindow B;
  FingerprintFn F{1, 3, 1};
  bool modulus_substituted = false;
};

// Draws p, then B over the integers [-(z'-1)z, n), then F over a prime
// in [n^10, 2n^10] with the large-modulus substitution.
ExecutionRandomness draw_execution_randomness(const ExecutionParams& params, std::size_t n,
                                              std::size_t m, std::uint64_t sigma, Rng& rng);

struct ExecutionOutcome {
  AnswerSet answers;
  std::uint64_t ops = 0;
  bool aborted = false;  // budget exceeded; answers is then [0..delta)
};

// A = {i : F(X_{u_i}) = F(Y_{v_i}(i))} with i mod p = u_i + v_i z.
// pat(j) and txt(i) supply pattern and text symbols; each call is one read.
template <class PatFn, class TextFn>
ExecutionOutcome run_execution(PatFn&& pat, TextFn&& txt, std::size_t n, std::size_t m,
                               const ExecutionParams& prm, const ExecutionRandomness& rnd) {
  using I64 = std::int64_t;
  const auto delta = static_cast<I64>(n - m + 1);
  const auto mm = static_cast<I64>(m);
  const auto z = static_cast<I64>(prm.z);
  const auto p = static_cast<I64>(rnd.p);
  const std::vector<I64> bpos = rnd.B.members();
  const std::uint64_t budget = prm.op_budget;
  std::uint64_t ops = 0;
  auto over = [&] { return budget != 0 && ops > budget; };
  auto abort_outcome = [&] { return ExecutionOutcome{AnswerSet::full(n - m + 1), ops, true}; };

  // F(X_u): pattern symbols j with (j + u) mod p in B.
  SlidingFingerprint sf(rnd.F);
  std::vector<std::uint64_t> fx(prm.z);
  for (I64 u = 0; u < z; ++u) {
    sf.clear();
    for (auto it = std::lower_bound(bpos.begin(), bpos.end(), u); it != bpos.end() && *it < u + mm; ++it) {
      sf.extend_right(pat(static_cast<std::size_t>(*it - u)));
      ++ops;
    }
    fx[static_cast<std::size_t>(u)] = sf.value();
    ++ops;
    if (over()) return abort_outcome();
  }

  auto lists = std::make_shared<AnswerSet::Lists>();
  std::unordered_map<std::uint64_t, std::uint32_t> bucket;
  bucket.reserve(prm.z * 2);
  for (std::size_t u = 0; u < prm.z; ++u) {
    auto [it, inserted] = bucket.try_emplace(fx[u], static_cast<std::uint32_t>(lists->size()));
    if (inserted) lists->emplace_back();
    (*lists)[it->second].push_back(static_cast<std::uint32_t>(u));
  }

  std::vector<AnswerSet::Segment> segs;
  std::deque<Symbol> win;
  const std::size_t nb = bpos.size();
  for (std::size_t v = 0; v < prm.z_prime; ++v) {
    const I64 shift = static_cast<I64>(v) * z;
    if (shift >= p) break;
    // Window of Y_v(i): elements e = t + shift of I_v inside [i, i+m),
    // bpos indices [front, back).
    std::size_t front = 0, back = 0;
    I64 cur = 0;
    bool live = false;
    auto elem = [&](std::size_t j) { return bpos[j] + shift; };
    auto fill = [&](I64 i) {
      while (back < nb && elem(back) < i + mm) {
        const Symbol s = txt(static_cast<std::size_t>(elem(back)));
        sf.extend_right(s);
        win.push_back(s);
        ++back;
        ++ops;
      }
    };
    auto advance = [&](I64 i) {
      if (!live || i >= cur + mm) {
        win.clear();
        sf.clear();
        front = static_cast<std::size_t>(std::lower_bound(bpos.begin(), bpos.end(), i - shift) - bpos.begin());
        back = front;
        live = true;
      } else {
        while (front < back && elem(front) < i) {
          sf.drop_left(win.front());
          win.pop_front();
          ++front;
          ++ops;
        }
      }
      fill(i);
      cur = i;
    };
    auto emit = [&](I64 a, I64 b, I64 base) {
      const auto found = bucket.find(sf.value());
      if (found == bucket.end()) return;
      const auto& list = (*lists)[found->second];
      const auto ia = std::lower_bound(list.begin(), list.end(), static_cast<std::uint32_t>(a - base)) - list.begin();
      const auto ib = std::lower_bound(list.begin(), list.end(), static_cast<std::uint32_t>(b - base)) - list.begin();
      if (ib > ia)
        segs.push_back({found->second, static_cast<std::uint32_t>(ia), static_cast<std::uint32_t>(ib),
                        static_cast<std::uint64_t>(base)});
    };
    // Alignments with v_i = v form the blocks [cp + vz, min(cp + vz + z, (c+1)p, delta)).
    for (I64 c0 = 0; c0 < delta; c0 += p) {
      const I64 lo = c0 + shift;
      if (lo >= delta) break;
      const I64 hi = std::min({lo + z, c0 + p, delta});
      advance(lo);
      for (I64 i = lo; i < hi;) {
        I64 next = hi;
        if (front < back) next = std::min(next, elem(front) + 1);
        if (back < nb) next = std::min(next, elem(back) - mm + 1);
        emit(i, next, lo);
        ++ops;
        if (over()) return abort_outcome();
        if (next < hi) advance(next);
        i = next;
      }
    }
  }

  std::sort(segs.begin(), segs.end(), [&](const AnswerSet::Segment& a, const AnswerSet::Segment& b) {
    return a.base + (*lists)[a.list][a.lo] < b.base + (*lists)[b.list][b.lo];
  });
  return ExecutionOutcome{AnswerSet(std::move(lists), std::move(segs), n - m + 1), ops, false};
}

// Draws fresh randomness and runs one execution against the oracle.
ExecutionOutcome one_execution(QueryOracle& oracle, const ExecutionParams& params, Rng& rng,
                               std::vector<std::string>* deviations = nullptr);

}  // namespace gapmatch
