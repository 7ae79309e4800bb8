#include <benchmark/benchmark.h>

#include "gapmatch/fingerprint.hpp"
#include "gapmatch/primes.hpp"
#include "gapmatch/rng.hpp"

namespace {

void BM_SlidingFingerprint(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  gapmatch::Rng rng(7);
  const gapmatch::FingerprintFn f = gapmatch::FingerprintFn::random(gapmatch::kLargePrime, len + 1, rng);
  gapmatch::SymbolSeq s(4 * len);
  for (auto& x : s) x = rng.below(1u << 20);
  for (auto _ : state) {
    gapmatch::SlidingFingerprint sf(f);
    for (std::size_t i = 0; i < s.size(); ++i) {
      sf.extend_right(s[i]);
      if (sf.length() > len) sf.drop_left(s[i - len]);
    }
    benchmark::DoNotOptimize(sf.value());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_SlidingFingerprint)->RangeMultiplier(4)->Range(64, 16384);

void BM_Evaluate(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  gapmatch::Rng rng(9);
  const gapmatch::FingerprintFn f = gapmatch::FingerprintFn::random(gapmatch::kLargePrime, len, rng);
  gapmatch::SymbolSeq s(len);
  for (auto& x : s) x = rng.below(1u << 20);
  for (auto _ : state) benchmark::DoNotOptimize(gapmatch::fp_eval(f, s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Evaluate)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oN);

}  // namespace
