#include <benchmark/benchmark.h>

#include "gapmatch/adaptive.hpp"
#include "gapmatch/instances.hpp"
#include "gapmatch/nonadaptive.hpp"
#include "gapmatch/one_execution.hpp"

namespace {

using gapmatch::LabeledInstance;

LabeledInstance random_instance(std::size_t n, std::size_t m, std::size_t k) {
  return gapmatch::generate("random", n, m, k, 0, 11, gapmatch::VerifyMode::Never);
}

void BM_OneExecution(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const LabeledInstance li = random_instance(4096, 2048, k);
  const auto p_hat = static_cast<std::uint64_t>(2 * k * 144);
  const std::size_t z = gapmatch::choose_z(p_hat, 4096, 2048, li.instance.delta());
  const gapmatch::ExecutionParams prm = gapmatch::make_execution_params(4096, 2048, k, p_hat, z);
  gapmatch::Rng rng(3);
  for (auto _ : state) {
    gapmatch::QueryOracle oracle(li.instance);
    benchmark::DoNotOptimize(gapmatch::one_execution(oracle, prm, rng).answers.size());
  }
}
BENCHMARK(BM_OneExecution)->RangeMultiplier(2)->Range(16, 256);

void BM_Folklore(benchmark::State& state) {
  const LabeledInstance li = random_instance(4096, 2048, static_cast<std::size_t>(state.range(0)));
  gapmatch::Rng rng(5);
  for (auto _ : state) {
    gapmatch::QueryOracle oracle(li.instance);
    benchmark::DoNotOptimize(gapmatch::folklore_test(oracle, rng).answer);
  }
}
BENCHMARK(BM_Folklore)->RangeMultiplier(2)->Range(16, 256);

void BM_TolerantDecide(benchmark::State& state) {
  const LabeledInstance li = random_instance(4096, 2048, static_cast<std::size_t>(state.range(0)));
  gapmatch::Rng rng(5);
  for (auto _ : state) {
    gapmatch::QueryOracle oracle(li.instance);
    benchmark::DoNotOptimize(gapmatch::tolerant_decide(oracle, {}, rng).answer);
  }
}
BENCHMARK(BM_TolerantDecide)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_AdaptiveTest(benchmark::State& state) {
  const LabeledInstance li = random_instance(1100, 1000, static_cast<std::size_t>(state.range(0)));
  gapmatch::Rng rng(5);
  const gapmatch::AdaptiveConfig cfg = gapmatch::AdaptiveConfig::derive(1100, 1000, li.instance.k);
  for (auto _ : state) {
    gapmatch::QueryOracle oracle(li.instance);
    benchmark::DoNotOptimize(gapmatch::adaptive_test(oracle, cfg, rng).answer);
  }
}
BENCHMARK(BM_AdaptiveTest)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
