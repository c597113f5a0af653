// closest_pair: command-line front end over the C API.
//
//   closest_pair gen    --n N [--seed S] [--dist D] [--out PATH]
//   closest_pair solve  [--in PATH] [--algo A] [--metric P] [--cutoff C] [--stats]
//   closest_pair verify [--n-max N] [--trials T] [--seed S] [--metrics LIST]
//   closest_pair bench  [--sizes LIST] [--reps R] [--metrics LIST] [--algos LIST]
//                       [--seed S] [--csv PATH] [--ratios PATH] ...
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 verification failure.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "closest_pair/closest_pair.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerify = 3;

struct UsageError {
  std::string message;
};

std::string metric_name(cp_metric m) {
  char buf[64];
  if (cp_metric_name(m, buf, sizeof buf) != CP_OK) return "?";
  return buf;
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

cp_metric parse_metric(const std::string& text) {
  cp_metric m{};
  if (cp_metric_parse(text.c_str(), &m) != CP_OK) throw UsageError{cp_last_error()};
  return m;
}

std::vector<cp_metric> parse_metrics(const std::vector<std::string>& items) {
  if (items.empty()) throw UsageError{"--metrics needs at least one value"};
  std::vector<cp_metric> out;
  for (const auto& item : items) out.push_back(parse_metric(item));
  return out;
}

std::vector<cp_algorithm> parse_algos(const std::vector<std::string>& items) {
  if (items.empty()) throw UsageError{"--algos needs at least one value"};
  std::vector<cp_algorithm> out;
  for (const auto& item : items) {
    cp_algorithm a{};
    if (cp_algorithm_parse(item.c_str(), &a) != CP_OK) throw UsageError{cp_last_error()};
    out.push_back(a);
  }
  return out;
}

// Status from a data-handling call: invalid arguments are the caller's flags,
// everything else is a data error.
int status_exit(cp_status status) {
  return status == CP_ERR_INVALID_ARGUMENT ? kExitUsage : kExitData;
}

int report_failure(cp_status status) {
  std::cerr << "error: " << cp_last_error() << '\n';
  return status_exit(status);
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::string dist = "uniform";
  std::string out = "-";
};

int run_gen(const GenArgs& args) {
  if (args.n < 2) throw UsageError{"--n must be at least 2"};
  cp_gen_spec spec;
  cp_gen_spec_init(&spec);
  spec.n = static_cast<size_t>(args.n);
  spec.seed = args.seed;
  if (cp_distribution_parse(args.dist.c_str(), &spec) != CP_OK) throw UsageError{cp_last_error()};

  cp_pointset* points = nullptr;
  if (cp_status s = cp_pointset_generate(&spec, &points); s != CP_OK) return report_failure(s);
  const cp_status s = cp_pointset_write(points, args.out.c_str());
  cp_pointset_destroy(points);
  return s == CP_OK ? kExitOk : report_failure(s);
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string in = "-";
  std::string algo = "basic2";
  std::string metric = "2";
  std::int64_t cutoff = CP_DEFAULT_CUTOFF;
  bool stats = false;
};

int run_solve(const SolveArgs& args) {
  cp_algorithm algo{};
  if (cp_algorithm_parse(args.algo.c_str(), &algo) != CP_OK) throw UsageError{cp_last_error()};
  const cp_metric metric = parse_metric(args.metric);
  if (args.cutoff < 2) throw UsageError{"--cutoff must be at least 2"};

  cp_pointset* points = nullptr;
  if (cp_status s = cp_pointset_read(args.in.c_str(), &points); s != CP_OK) {
    std::cerr << "error: " << cp_last_error() << '\n';
    return kExitData;
  }
  cp_result result{};
  const cp_status s =
      cp_solve(points, metric, algo, static_cast<size_t>(args.cutoff), &result);
  cp_pointset_destroy(points);
  if (s != CP_OK) return report_failure(s);

  std::cout << result.index_a << ' ' << result.index_b << ' ' << shortest(result.dist) << '\n';
  if (args.stats) {
    const cp_counters& c = result.counters;
    std::cout << "distance_calls_total=" << c.distance_calls_total << '\n'
              << "distance_calls_combine=" << c.distance_calls_combine << '\n'
              << "combine_invocations=" << c.combine_invocations << '\n'
              << "max_slab_points=" << c.max_slab_points << '\n'
              << "recursion_depth_max=" << c.recursion_depth_max << '\n';
  }
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::int64_t n_max = 2000;
  std::int64_t trials = 100;
  std::uint64_t seed = 0;
  std::vector<std::string> metrics = {"1", "2", "3.1415", "inf"};
  std::int64_t cutoff = CP_DEFAULT_CUTOFF;
};

int run_verify(const VerifyArgs& args, const std::string& program) {
  if (args.trials < 1) throw UsageError{"--trials must be at least 1"};
  if (args.n_max < 2) throw UsageError{"--n-max must be at least 2"};
  if (args.cutoff < 2) throw UsageError{"--cutoff must be at least 2"};
  const auto metrics = parse_metrics(args.metrics);

  cp_verify_config config;
  cp_verify_config_init(&config);
  config.n_max = static_cast<size_t>(args.n_max);
  config.trials = static_cast<size_t>(args.trials);
  config.seed = args.seed;
  config.metrics = metrics.data();
  config.n_metrics = metrics.size();
  config.cutoff = static_cast<size_t>(args.cutoff);

  cp_verify_report* report = nullptr;
  if (cp_status s = cp_verify_run(&config, &report); s != CP_OK) return report_failure(s);

  for (size_t i = 0; i < cp_verify_report_tally_count(report); ++i) {
    cp_verify_tally t{};
    cp_verify_report_tally(report, i, &t);
    const bool pass = t.passed == t.trials && t.bound_violations == 0;
    std::cout << "metric=" << metric_name(t.metric) << ' ' << (pass ? "PASS " : "FAIL ")
              << t.passed << '/' << t.trials << " combine_steps=" << t.combine_invocations
              << " bound_violations=" << t.bound_violations << '\n';
  }
  for (size_t i = 0; i < cp_verify_report_fixture_count(report); ++i) {
    cp_verify_fixture f{};
    cp_verify_report_fixture(report, i, &f);
    std::cout << "fixture " << f.name << ' ' << (f.passed ? "PASS" : "FAIL") << '\n';
    if (!f.passed) {
      std::cerr << "fixture " << f.name << ": " << f.detail << '\n'
                << "repro: " << program << " verify --trials 1 --n-max 2 --metrics 1\n";
    }
  }
  for (size_t i = 0; i < cp_verify_report_mismatch_count(report); ++i) {
    cp_verify_mismatch m{};
    cp_verify_report_mismatch(report, i, &m);
    std::cerr << "mismatch: metric=" << metric_name(m.metric)
              << " algo=" << cp_algorithm_name(m.algorithm) << " seed=" << m.trial_seed
              << " n=" << m.n << ": " << m.what << '\n'
              << "repro: " << program << " verify --n-max " << args.n_max
              << " --trials 1 --seed " << m.trial_seed << " --metrics " << metric_name(m.metric)
              << " --cutoff " << args.cutoff << '\n';
  }

  const bool ok = cp_verify_report_ok(report) != 0;
  cp_verify_report_destroy(report);
  std::cout << (ok ? "verify: OK" : "verify: FAILED") << '\n';
  return ok ? kExitOk : kExitVerify;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::int64_t> sizes;
  std::int64_t reps = 10;
  std::vector<std::string> metrics = {"1", "2", "3.1415", "inf"};
  std::vector<std::string> algos = {"basic2", "basic7"};
  std::uint64_t seed = 0;
  std::string csv = "-";
  std::string ratios = "-";
  std::string ratios_csv;
  std::string gnuplot;
  std::int64_t cutoff = CP_DEFAULT_CUTOFF;
  std::int64_t brute_max = 50000;
  bool no_warmup = false;
  bool quiet = false;
};

void print_progress(const cp_bench_record* r, void*) {
  char name[64];
  cp_metric_name(r->metric, name, sizeof name);
  std::fprintf(stderr, "bench n=%zu rep=%zu %s p=%s %.3f ms\n", r->n, r->rep,
               cp_algorithm_name(r->algo), name, static_cast<double>(r->wall_time_ns) / 1e6);
}

int run_bench(const BenchArgs& args) {
  cp_bench_plan plan;
  cp_bench_plan_init(&plan);

  std::vector<size_t> sizes(plan.sizes, plan.sizes + plan.n_sizes);
  if (!args.sizes.empty()) {
    sizes.clear();
    for (std::int64_t n : args.sizes) {
      if (n < 2) throw UsageError{"--sizes entries must be at least 2"};
      if (!sizes.empty() && static_cast<size_t>(n) <= sizes.back()) {
        throw UsageError{"--sizes must be strictly increasing"};
      }
      sizes.push_back(static_cast<size_t>(n));
    }
  }
  if (args.reps < 1) throw UsageError{"--reps must be at least 1"};
  if (args.cutoff < 2) throw UsageError{"--cutoff must be at least 2"};
  if (args.brute_max < 0) throw UsageError{"--brute-max must be non-negative"};
  const auto metrics = parse_metrics(args.metrics);
  const auto algos = parse_algos(args.algos);

  plan.sizes = sizes.data();
  plan.n_sizes = sizes.size();
  plan.reps = static_cast<size_t>(args.reps);
  plan.metrics = metrics.data();
  plan.n_metrics = metrics.size();
  plan.algos = algos.data();
  plan.n_algos = algos.size();
  plan.base_seed = args.seed;
  plan.cutoff = static_cast<size_t>(args.cutoff);
  plan.brute_max_n = static_cast<size_t>(args.brute_max);
  plan.warmup = args.no_warmup ? 0 : 1;

  cp_bench_records* records = nullptr;
  if (cp_status s = cp_bench_run(&plan, args.quiet ? nullptr : print_progress, nullptr, &records);
      s != CP_OK) {
    return report_failure(s);
  }

  int code = kExitOk;
  if (cp_status s = cp_bench_records_write(records, args.csv.c_str()); s != CP_OK) {
    code = report_failure(s);
  }

  bool paired = false;
  for (cp_algorithm a : algos) paired |= a == CP_ALGO_BASIC2;
  bool has7 = false;
  for (cp_algorithm a : algos) has7 |= a == CP_ALGO_BASIC7;
  paired = paired && has7;

  if (code == kExitOk && paired) {
    cp_ratio_table* table = nullptr;
    if (cp_status s = cp_ratio_table_compute(records, &table); s != CP_OK) {
      code = report_failure(s);
    } else {
      if (args.csv == "-" && args.ratios == "-") std::cout << '\n';
      const std::pair<const std::string*, cp_table_format> outputs[] = {
          {&args.ratios, CP_FORMAT_TEXT},
          {&args.ratios_csv, CP_FORMAT_CSV},
          {&args.gnuplot, CP_FORMAT_GNUPLOT}};
      for (const auto& [path, format] : outputs) {
        if (path->empty() || code != kExitOk) continue;
        if (cp_status s = cp_ratio_table_write(table, format, path->c_str()); s != CP_OK) {
          code = report_failure(s);
        }
      }
      cp_ratio_table_destroy(table);
    }
  } else if (code == kExitOk && !args.quiet) {
    std::cerr << "note: ratio table needs both basic2 and basic7; skipped\n";
  }
  cp_bench_records_destroy(records);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closest pair of points: Basic-2 / Basic-7 divide and conquer, brute force"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random point file");
  gen_cmd->add_option("--n", gen.n, "Number of points (>= 2)")->required();
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed")->capture_default_str();
  gen_cmd->add_option("--dist", gen.dist,
                      "uniform | box:xmin,xmax,ymin,ymax | clustered:k,sigma")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output path, '-' for stdout")->capture_default_str();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Find the closest pair in a point file");
  solve_cmd->add_option("--in", solve.in, "Input path, '-' for stdin")->capture_default_str();
  solve_cmd->add_option("--algo", solve.algo, "basic2 | basic7 | brute")->capture_default_str();
  solve_cmd->add_option("--metric", solve.metric, "Minkowski p >= 1 or 'inf'")
      ->capture_default_str();
  solve_cmd->add_option("--cutoff", solve.cutoff, "Brute-force base case size (>= 2)")
      ->capture_default_str();
  solve_cmd->add_flag("--stats", solve.stats, "Print instrumentation counters");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check solvers against brute force");
  verify_cmd->add_option("--n-max", verify.n_max, "Largest random instance size")
      ->capture_default_str();
  verify_cmd->add_option("--trials", verify.trials, "Random instances per metric")
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Seed of the first trial")->capture_default_str();
  verify_cmd->add_option("--metrics", verify.metrics, "Comma-separated metrics")
      ->delimiter(',')
      ->capture_default_str();
  verify_cmd->add_option("--cutoff", verify.cutoff, "Brute-force base case size (>= 2)")
      ->capture_default_str();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time BASIC2 against BASIC7");
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated sizes (default 2^15..2^21)")
      ->delimiter(',');
  bench_cmd->add_option("--reps", bench.reps, "Instances per size")->capture_default_str();
  bench_cmd->add_option("--metrics", bench.metrics, "Comma-separated metrics")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--algos", bench.algos, "Comma-separated algorithms")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Base seed")->capture_default_str();
  bench_cmd->add_option("--csv", bench.csv, "Per-run CSV path, '-' for stdout")
      ->capture_default_str();
  bench_cmd->add_option("--ratios", bench.ratios, "Aligned ratio table path, '-' for stdout")
      ->capture_default_str();
  bench_cmd->add_option("--ratios-csv", bench.ratios_csv, "Ratio table as CSV");
  bench_cmd->add_option("--gnuplot", bench.gnuplot, "Ratio data file for gnuplot");
  bench_cmd->add_option("--cutoff", bench.cutoff, "Brute-force base case size (>= 2)")
      ->capture_default_str();
  bench_cmd->add_option("--brute-max", bench.brute_max, "Skip brute force above this size")
      ->capture_default_str();
  bench_cmd->add_flag("--no-warmup", bench.no_warmup, "Skip the discarded warm-up solves");
  bench_cmd->add_flag("--quiet", bench.quiet, "No progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*verify_cmd) return run_verify(verify, argv[0]);
    if (*bench_cmd) return run_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.message << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
