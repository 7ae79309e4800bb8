#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gapmatch/instances.hpp"
#include "gapmatch/query_oracle.hpp"
#include "gapmatch/report.hpp"
#include "gapmatch/rng.hpp"

namespace gapmatch::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kVerifyFailed = 3 };

bool is_tester(const std::string& name);
// Dispatches folklore | nonadaptive | adaptive.
TesterReport run_tester(const std::string& tester, QueryOracle& oracle, Profile profile, Rng& rng,
                        bool report = false, bool trace = false);

struct BenchRow {
  std::string tester;
  std::size_t n = 0, m = 0, k = 0, kprime = 0;
  std::uint64_t seed = 0;
  std::string profile;
  std::uint64_t queries_pattern = 0, queries_text = 0, time_ns = 0;
  std::string answer;
  std::string truth_exact, truth_kfar;  // "1", "0" or "unknown"
  bool correct = true;
  std::string deviations;
};

std::string bench_csv_header();
std::string to_csv(const BenchRow& row);

// Yes is required when truth_exact holds, No when truth_kfar holds.
bool promise_correct(Answer answer, const LabeledInstance& li);

struct BenchOptions {
  std::string tester = "nonadaptive";
  std::string dist = "mixed";
  std::size_t n = 0, m = 0, kprime = 0;
  std::vector<std::size_t> sweep;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  Profile profile = Profile::Desk;
  std::size_t jobs = 1;
  bool distinct = false;  // count each queried position once
};

// Rows ordered by (k in sweep order, trial). Trial t uses instance seed seed + t.
std::vector<BenchRow> run_bench(const BenchOptions& opts);

struct BenchSummary {
  std::vector<std::pair<std::size_t, double>> mean_queries;  // per k
  double slope = 0.0;  // least squares of ln(mean) on ln(k); NaN below two points
};
BenchSummary summarize(const std::vector<BenchRow>& rows);
double loglog_slope(const std::vector<std::pair<double, double>>& points);

// Parses "k=16,32,64".
std::vector<std::size_t> parse_sweep(const std::string& text);

// Entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gapmatch::cli
