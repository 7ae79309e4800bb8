#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gapmatch/answer_set.hpp"
#include "gapmatch/instances.hpp"
#include "gapmatch/nonadaptive.hpp"
#include "gapmatch/one_execution.hpp"
#include "oracles.hpp"

using namespace gapmatch;

namespace {

ExecutionOutcome run_shared(const Instance& inst, const ExecutionParams& prm, const ExecutionRandomness& rnd) {
  return run_execution([&](std::size_t j) { return inst.pattern[j]; }, [&](std::size_t i) { return inst.text[i]; },
                       inst.n(), inst.m(), prm, rnd);
}

}  // namespace

TEST_CASE("answer set construction and access") {
  const AnswerSet full = AnswerSet::full(7);
  CHECK(full.size() == 7);
  CHECK(full.at(3) == 3);
  CHECK(full.enumerate() == PositionSet{0, 1, 2, 3, 4, 5, 6});
  const AnswerSet some = AnswerSet::from_sorted({1, 4, 5, 9}, 10);
  CHECK(some.size() == 4);
  CHECK(some.at(2) == 5);
  CHECK(some.rank(5) == 2);
  CHECK(some.count_in(2, 6) == 2);
  CHECK(some.contains(9));
  CHECK_FALSE(some.contains(8));
  CHECK(some.enumerate_range(4, 10) == PositionSet{4, 5, 9});
  CHECK(AnswerSet::from_sorted({}, 10).empty());
}

TEST_CASE("sampling rate and parameter checks") {
  CHECK(sampling_rate(100, 4) == doctest::Approx(1.0 - 1.0 / 100.0));
  CHECK(sampling_rate(2000, 64) == doctest::Approx(1.0 - std::pow(2000.0, -4.0 / 64)));
  const ExecutionParams prm = make_execution_params(100, 50, 3, 10, 4);
  CHECK(prm.z_prime == 5);
  CHECK(prm.z * prm.z_prime >= std::min<std::size_t>(20, 51));
  CHECK_THROWS(make_execution_params(100, 50, 12, 10, 4));
  CHECK_THROWS(make_execution_params(100, 50, 3, 10, 11));
}

TEST_CASE("choose_z branches") {
  CHECK(choose_z(3, 200, 100, 101) == 3);
  CHECK(choose_z(3, 5, 5, 1) == 1);
  const std::size_t m = 100, n = 1000, delta = n - m + 1;
  const std::size_t z = choose_z(100, n, m, delta);
  CHECK(z == static_cast<std::size_t>(std::ceil(std::sqrt(200.0 * 10.0))) );
  CHECK(z >= 1);
  CHECK(z <= 100);
}

TEST_CASE("one execution equals the per-alignment recomputation") {
  const Instance ex = fixture::container_example(2);
  Rng rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const std::uint64_t p_hat = 2 + rng.below(12);
    const std::size_t z = 1 + rng.below(std::min<std::uint64_t>(p_hat, ex.delta()));
    ExecutionParams prm = make_execution_params(ex.n(), ex.m(), 2, p_hat, z);
    if (rep % 3 == 0) prm.beta = 0.5;
    const ExecutionRandomness rnd = draw_execution_randomness(prm, ex.n(), ex.m(), ex.sigma, rng);
    const ExecutionOutcome out = run_shared(ex, prm, rnd);
    CHECK_FALSE(out.aborted);
    CHECK(out.answers.enumerate() == oracle::execution_set(ex.pattern, ex.text, prm, rnd));
  }
}

TEST_CASE("one execution keeps exact occurrences and handles delta = 1") {
  Rng rng(4);
  const Instance same = Instance::make({1, 0, 1, 1, 0}, {1, 0, 1, 1, 0}, 2, 1);
  QueryOracle o(same);
  const ExecutionParams prm = make_execution_params(5, 5, 1, 2, 1);
  CHECK(one_execution(o, prm, rng).answers.enumerate() == PositionSet{0});
  for (int rep = 0; rep < 50; ++rep) {
    const LabeledInstance li = generate("planted", 200, 60, 6, 0, 100 + rep);
    QueryOracle oracle(li.instance);
    const ExecutionParams pr = make_execution_params(200, 60, 6, 30, 5);
    CHECK(one_execution(oracle, pr, rng).answers.contains(*li.plant));
  }
}

TEST_CASE("one execution aborts on budget") {
  const LabeledInstance li = generate("random", 400, 100, 8, 0, 3);
  QueryOracle oracle(li.instance);
  ExecutionParams prm = make_execution_params(400, 100, 8, 60, 8);
  prm.op_budget = 10;
  Rng rng(3);
  const ExecutionOutcome out = one_execution(oracle, prm, rng);
  CHECK(out.aborted);
  CHECK(out.answers.size() == li.instance.delta());
}

TEST_CASE("folklore tester") {
  Rng rng(8);
  const Instance same = Instance::make({1, 0, 1}, {1, 0, 1}, 2, 1);
  QueryOracle o(same);
  CHECK(folklore_test(o, rng).answer == Answer::Yes);
  for (int rep = 0; rep < 50; ++rep) {
    const LabeledInstance li = generate("planted", 300, 100, 10, 0, rep);
    QueryOracle oracle(li.instance);
    CHECK(folklore_test(oracle, rng).answer == Answer::Yes);
  }
  const FolkloreRates r = folklore_rates(2000, 1000, 64);
  CHECK(r.pattern * r.text == doctest::Approx(2.0 * std::log(2000.0) / 64));
}

TEST_CASE("driver plan") {
  const DriverPlan d = plan_driver(2000, 1000, 64, 0, {});
  CHECK(d.r == 40);
  CHECK(d.rho == doctest::Approx(1.0));
  CHECK(d.p_hat == 2 * 64 * 121);
  CHECK(d.kept == 34);
  CHECK_FALSE(d.brute_force);
  CHECK(plan_driver(2000, 1000, 64, 13, {}).brute_force);
  NonadaptiveConfig paper;
  paper.profile = Profile::Paper;
  CHECK(plan_driver(2000, 1000, 64, 0, paper).r == static_cast<std::size_t>(std::ceil(216 * std::log(2000.0))));
}

TEST_CASE("tolerant tester answers Yes on exact plants and reports the plant") {
  Rng rng(10);
  for (int rep = 0; rep < 20; ++rep) {
    const LabeledInstance li = generate("planted", 400, 200, 16, 0, 50 + rep);
    QueryOracle oracle(li.instance);
    CHECK(tolerant_decide(oracle, {}, rng).answer == Answer::Yes);
    QueryOracle o2(li.instance);
    const TesterReport rep2 = tolerant_report(o2, {}, rng);
    REQUIRE(rep2.reported_set.has_value());
    CHECK(std::binary_search(rep2.reported_set->begin(), rep2.reported_set->end(), *li.plant));
  }
}

TEST_CASE("tolerant tester brute-force branch") {
  const LabeledInstance li = generate("planted-noisy", 300, 100, 10, 5, 1);
  QueryOracle oracle(li.instance);
  Rng rng(1);
  const TesterReport rep = tolerant_report(oracle, {}, rng);
  CHECK(rep.answer == Answer::Yes);
  CHECK(*rep.reported_set == occ_k_bruteforce(li.instance, 10));
}

TEST_CASE("tolerant tester rejects far instances") {
  Rng rng(11);
  std::size_t no = 0, total = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const LabeledInstance li = generate("random", 1000, 500, 40, 0, 900 + rep);
    if (!li.truth_kfar.value.value_or(false)) continue;
    QueryOracle oracle(li.instance);
    const TesterReport r = tolerant_report(oracle, {}, rng);
    ++total;
    no += r.answer == Answer::No;
    if (r.answer == Answer::No) CHECK(r.reported_set->empty());
  }
  CHECK(total > 10);
  CHECK(no >= total - 1);
}
