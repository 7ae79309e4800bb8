#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "gapmatch/adaptive.hpp"
#include "gapmatch/containers.hpp"
#include "gapmatch/errors.hpp"
#include "gapmatch/instance_io.hpp"
#include "gapmatch/nonadaptive.hpp"

namespace gapmatch::cli {

bool is_tester(const std::string& name) {
  return name == "folklore" || name == "nonadaptive" || name == "adaptive";
}

TesterReport run_tester(const std::string& tester, QueryOracle& oracle, Profile profile, Rng& rng, bool report,
                        bool trace) {
  if (tester == "folklore") return folklore_test(oracle, rng);
  if (tester == "nonadaptive") {
    NonadaptiveConfig cfg;
    cfg.profile = profile;
    return report ? tolerant_report(oracle, cfg, rng) : tolerant_decide(oracle, cfg, rng);
  }
  if (tester == "adaptive") {
    AdaptiveConfig cfg = AdaptiveConfig::derive(oracle.n(), oracle.m(), oracle.k(), 1.0, profile);
    cfg.trace = trace;
    return adaptive_test(oracle, cfg, rng);
  }
  throw PreconditionError("unknown tester: " + tester);
}

namespace {

std::string label_field(const Label& l) {
  if (!l.value) return "unknown";
  return *l.value ? "1" : "0";
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

}  // namespace

std::string bench_csv_header() {
  return "tester,n,m,k,kprime,seed,profile,queries_pattern,queries_text,time_ns,answer,truth_exact,truth_kfar,"
         "correct,deviations";
}

std::string to_csv(const BenchRow& r) {
  std::ostringstream o;
  o << r.tester << ',' << r.n << ',' << r.m << ',' << r.k << ',' << r.kprime << ',' << r.seed << ',' << r.profile
    << ',' << r.queries_pattern << ',' << r.queries_text << ',' << r.time_ns << ',' << r.answer << ','
    << r.truth_exact << ',' << r.truth_kfar << ',' << (r.correct ? 1 : 0) << ',' << csv_quote(r.deviations);
  return o.str();
}

bool promise_correct(Answer answer, const LabeledInstance& li) {
  if (li.truth_exact.value.value_or(false) && answer != Answer::Yes) return false;
  if (li.truth_kfar.value.value_or(false) && answer != Answer::No) return false;
  return true;
}

std::vector<BenchRow> run_bench(const BenchOptions& opts) {
  if (!is_tester(opts.tester)) throw PreconditionError("bench: unknown tester " + opts.tester);
  if (!is_distribution(opts.dist)) throw PreconditionError("bench: unknown distribution " + opts.dist);
  const std::size_t total = opts.sweep.size() * opts.trials;
  std::vector<BenchRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const std::size_t k = opts.sweep[idx / opts.trials];
      const std::uint64_t seed = opts.seed + idx % opts.trials;
      const LabeledInstance li = generate(opts.dist, opts.n, opts.m, k, opts.kprime, seed);
      QueryOracle::Options o;
      o.dedupe = opts.distinct;
      QueryOracle oracle(li.instance, o);
      Rng rng(derive_seed(seed, 1));
      const TesterReport rep = run_tester(opts.tester, oracle, opts.profile, rng);
      BenchRow& row = rows[idx];
      row.tester = opts.tester;
      row.n = li.instance.n();
      row.m = li.instance.m();
      row.k = li.instance.k;
      row.kprime = li.instance.kprime;
      row.seed = seed;
      row.profile = to_string(opts.profile);
      row.queries_pattern = rep.queries_pattern;
      row.queries_text = rep.queries_text;
      row.time_ns = rep.wall_time_ns;
      row.answer = to_string(rep.answer);
      row.truth_exact = label_field(li.truth_exact);
      row.truth_kfar = label_field(li.truth_kfar);
      row.correct = promise_correct(rep.answer, li);
      row.deviations = join(rep.deviations, "; ");
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return rows;
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double c = static_cast<double>(points.size());
  const double den = c * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (c * sxy - sx * sy) / den;
}

BenchSummary summarize(const std::vector<BenchRow>& rows) {
  BenchSummary s;
  std::vector<std::size_t> order;
  std::map<std::size_t, std::pair<double, std::size_t>> acc;
  for (const BenchRow& r : rows) {
    if (!acc.count(r.k)) order.push_back(r.k);
    auto& [sum, cnt] = acc[r.k];
    sum += static_cast<double>(r.queries_pattern + r.queries_text);
    ++cnt;
  }
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k : order) {
    const double mean = acc[k].first / static_cast<double>(acc[k].second);
    s.mean_queries.emplace_back(k, mean);
    if (mean > 0) pts.emplace_back(static_cast<double>(k), mean);
  }
  s.slope = loglog_slope(pts);
  return s;
}

std::vector<std::size_t> parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || text.substr(0, eq) != "k") throw PreconditionError("sweep must look like k=16,32");
  std::vector<std::size_t> out;
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw PreconditionError("bad sweep value: " + item);
    out.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  if (out.empty()) throw PreconditionError("empty sweep");
  return out;
}

namespace {

VerifyMode parse_verify(const std::string& s) {
  if (s == "never") return VerifyMode::Never;
  if (s == "always") return VerifyMode::Always;
  return VerifyMode::Auto;
}

void print_report(std::ostream& out, const std::string& tester, const TesterReport& rep) {
  out << "tester=" << tester << " answer=" << to_string(rep.answer) << " queries_pattern=" << rep.queries_pattern
      << " queries_text=" << rep.queries_text << " queries=" << rep.queries() << " time_ns=" << rep.wall_time_ns
      << " executions=" << rep.executions << " aborted=" << rep.executions_aborted << '\n';
  for (const std::string& d : rep.deviations) out << "deviation: " << d << '\n';
  if (rep.reported_set) {
    out << "reported " << rep.reported_set->size() << ':';
    for (std::size_t x : *rep.reported_set) out << ' ' << x;
    out << '\n';
  }
  if (!rep.trace.empty()) {
    out << "trace: iter,block_side,block_index,a0,k0,bottom,potential\n";
    for (const std::string& t : rep.trace) out << "trace: " << t << '\n';
  }
}

struct GenArgs {
  std::string dist, out, verify = "auto";
  std::size_t n = 0, m = 0, k = 1, kprime = 0;
  std::uint64_t seed = 0;
};

struct RunArgs {
  std::string tester, in, profile = "desk";
  std::uint64_t seed = 0;
  bool report = false, trace = false, distinct = false;
};

struct BenchArgs {
  std::string tester = "nonadaptive", sweep, csv, profile = "desk", dist = "mixed";
  std::size_t n = 0, m = 0, kprime = 0, trials = 0, jobs = 1;
  std::uint64_t seed = 0;
  bool distinct = false;
};

struct ContainerArgs {
  std::string in, out;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  bool check = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const LabeledInstance li = generate(a.dist, a.n, a.m, a.k, a.kprime, a.seed, parse_verify(a.verify));
  const Metadata meta = to_metadata(li);
  if (a.out.empty() || a.out == "-")
    write_instance(out, li.instance, meta);
  else
    write_instance_file(a.out, li.instance, meta);
  return kOk;
}

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  const auto profile = parse_profile(a.profile);
  if (!profile) {
    err << "unknown profile: " << a.profile << '\n';
    return kUsage;
  }
  const InstanceFile file = read_instance_file(a.in);
  QueryOracle::Options o;
  o.dedupe = a.distinct;
  QueryOracle oracle(file.instance, o);
  Rng rng(a.seed);
  const TesterReport rep = run_tester(a.tester, oracle, *profile, rng, a.report, a.trace);
  print_report(out, a.tester, rep);
  return kOk;
}

int cmd_verify(const std::string& in, std::ostream& out) {
  const InstanceFile file = read_instance_file(in);
  const LabeledInstance stored = from_file(file);
  LabeledInstance fresh = stored;
  fresh.k_exact = true;
  verify_labels(fresh);
  bool ok = true;
  auto check = [&](const char* name, const Label& have, const Label& truth) {
    out << name << ": oracle=" << label_field(truth) << " file=" << label_field(have);
    if (have.value && *have.value != *truth.value) {
      ok = false;
      out << " MISMATCH";
    }
    out << '\n';
  };
  check("truth_exact", stored.truth_exact, fresh.truth_exact);
  check("truth_kfar", stored.truth_kfar, fresh.truth_kfar);
  if (stored.plant) {
    const Instance& inst = file.instance;
    const std::size_t t = *stored.plant;
    const bool in_range = t < inst.delta();
    const std::size_t hd = in_range ? hamming_distance(inst.pattern, window(inst.text, t, inst.m())) : 0;
    out << "plant: " << t << " hd=" << (in_range ? std::to_string(hd) : "out-of-range") << '\n';
    if (!in_range || hd > inst.kprime) ok = false;
  }
  out << (ok ? "labels agree" : "labels disagree") << '\n';
  return ok ? kOk : kVerifyFailed;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const auto profile = parse_profile(a.profile);
  if (!profile) {
    err << "unknown profile: " << a.profile << '\n';
    return kUsage;
  }
  BenchOptions o;
  o.tester = a.tester;
  o.dist = a.dist;
  o.n = a.n;
  o.m = a.m;
  o.kprime = a.kprime;
  o.sweep = parse_sweep(a.sweep);
  o.trials = a.trials;
  o.seed = a.seed;
  o.profile = *profile;
  o.jobs = a.jobs;
  o.distinct = a.distinct;
  const std::vector<BenchRow> rows = run_bench(o);
  std::ofstream file;
  std::ostream* csv = &out;
  if (!a.csv.empty() && a.csv != "-") {
    file.open(a.csv, std::ios::binary);
    if (!file) throw ParseError("cannot open " + a.csv + " for writing");
    csv = &file;
  }
  *csv << bench_csv_header() << '\n';
  for (const BenchRow& r : rows) *csv << to_csv(r) << '\n';
  if (file.is_open()) {
    file.close();
    if (!file) throw ParseError("write failed: " + a.csv);
  }
  const BenchSummary s = summarize(rows);
  std::size_t correct = 0;
  for (const BenchRow& r : rows) correct += r.correct;
  out << "# summary tester=" << a.tester << " trials=" << a.trials << " correct=" << correct << '/' << rows.size()
      << '\n';
  for (const auto& [k, mean] : s.mean_queries) out << "# k=" << k << " mean_queries=" << mean << '\n';
  out << "# slope=" << s.slope << '\n';
  return kOk;
}

int cmd_container(const ContainerArgs& a, std::ostream& out, std::ostream& err) {
  const InstanceFile file = read_instance_file(a.in);
  const Instance& inst = file.instance;
  Rng rng(a.seed);
  ContainerSet M;
  try {
    M = mismatch_container(inst, a.k, rng);
  } catch (const ConstructionError& e) {
    err << "container construction failed: " << e.what() << " (draws=" << e.achieved() << ")\n";
    return kVerifyFailed;
  }
  out << "size=" << M.positions.size() << " n=" << inst.n() << " m=" << inst.m() << " k=" << a.k
      << " ratio=" << container_ratio(M.positions.size(), inst.n(), inst.m(), a.k)
      << " bound=" << container_size_bound(inst.n(), inst.m(), a.k) << " fallback=" << (M.fallback ? 1 : 0)
      << " redraws=" << M.redraws << '\n';
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw ParseError("cannot open " + a.out + " for writing");
    write_container(f, M.positions, ContainerHeader{inst.n(), inst.m(), a.k, a.seed});
  }
  if (a.check) {
    const CoverageCertificate cert = verify_container(inst, M.positions, a.k);
    out << "check: " << (cert.pass ? "pass" : "FAIL") << " violations=" << cert.violations.size() << '\n';
    if (!cert.pass) {
      for (const CoverageViolation& v : cert.violations)
        err << "violation i=" << v.i << " covered=" << v.covered << " required=" << v.required << '\n';
      return kVerifyFailed;
    }
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Property testing for pattern matching with mismatches"};
  app.require_subcommand(1);

  GenArgs ga;
  CLI::App* gen = app.add_subcommand("gen", "Generate a labeled instance");
  gen->add_option("--dist", ga.dist, "Distribution")->required()->check(CLI::IsMember(
      {"random", "planted", "mixed", "hybrid-equal", "hybrid-indep", "hybrid", "large-alpha", "large-alpha-random",
       "large-alpha-planted", "planted-noisy"}));
  gen->add_option("--n", ga.n, "Text length")->required();
  gen->add_option("--m", ga.m, "Pattern length")->required();
  gen->add_option("--k", ga.k, "Mismatch threshold")->required();
  gen->add_option("--kprime", ga.kprime, "Planted mismatches (planted-noisy)");
  gen->add_option("--seed", ga.seed, "Seed")->required();
  gen->add_option("-o,--out", ga.out, "Output file (default stdout)");
  gen->add_option("--verify", ga.verify, "Label verification")->check(CLI::IsMember({"auto", "always", "never"}));

  RunArgs ra;
  CLI::App* run = app.add_subcommand("run", "Run a tester on an instance file");
  run->add_option("--tester", ra.tester, "Tester")->required()->check(
      CLI::IsMember({"folklore", "nonadaptive", "adaptive"}));
  run->add_option("--in", ra.in, "Instance file")->required();
  run->add_option("--seed", ra.seed, "Seed");
  run->add_option("--profile", ra.profile, "paper or desk")->check(CLI::IsMember({"paper", "desk"}));
  run->add_flag("--report", ra.report, "Print the reported set (nonadaptive)");
  run->add_flag("--trace", ra.trace, "Print adaptive iteration lines");
  run->add_flag("--distinct", ra.distinct, "Count each queried position once");

  std::string verify_in;
  CLI::App* ver = app.add_subcommand("verify", "Check stored labels against the brute-force oracle");
  ver->add_option("--in", verify_in, "Instance file")->required();

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "Query-count sweep over k");
  bench->add_option("--tester", ba.tester, "Tester")->check(CLI::IsMember({"folklore", "nonadaptive", "adaptive"}));
  bench->add_option("--sweep", ba.sweep, "k=16,32,...")->required();
  bench->add_option("--n", ba.n, "Text length")->required();
  bench->add_option("--m", ba.m, "Pattern length")->required();
  bench->add_option("--kprime", ba.kprime, "kprime for planted-noisy");
  bench->add_option("--trials", ba.trials, "Trials per k")->required();
  bench->add_option("--seed", ba.seed, "Base seed");
  bench->add_option("--csv", ba.csv, "CSV output file (default stdout)");
  bench->add_option("--profile", ba.profile, "paper or desk")->check(CLI::IsMember({"paper", "desk"}));
  bench->add_option("--dist", ba.dist, "Instance distribution (default mixed)");
  bench->add_option("--jobs", ba.jobs, "Concurrent trials")->check(CLI::PositiveNumber);
  bench->add_flag("--distinct", ba.distinct, "Count each queried position once");

  ContainerArgs ca;
  CLI::App* cont = app.add_subcommand("container", "Build a mismatch container");
  cont->add_option("--in", ca.in, "Instance file")->required();
  cont->add_option("--k", ca.k, "Coverage threshold")->required()->check(CLI::PositiveNumber);
  cont->add_option("--seed", ca.seed, "Seed");
  cont->add_option("-o,--out", ca.out, "Write the container to this file");
  cont->add_flag("--check", ca.check, "Verify coverage independently");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(ga, out);
    if (run->parsed()) return cmd_run(ra, out, err);
    if (ver->parsed()) return cmd_verify(verify_in, out);
    if (bench->parsed()) return cmd_bench(ba, out, err);
    if (cont->parsed()) return cmd_container(ca, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConstructionError& e) {
    err << "construction failed: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}

}  // namespace gapmatch::cli
