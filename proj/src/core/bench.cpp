#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "error.hpp"
#include "text.hpp"

namespace closest_pair {
namespace {

std::string coordinates(std::size_t n, std::size_t rep, Algorithm algo, const Metric& metric) {
  std::ostringstream os;
  os << "n=" << n << " rep=" << rep << " algo=" << to_string(algo)
     << " metric=" << metric.to_string();
  return os.str();
}

std::uint64_t time_solve(const PointSet& points, const Metric& metric, const SolveOptions& options,
                         PairResult& result) {
  const auto start = std::chrono::steady_clock::now();
  result = solve(points, metric, options);
  const auto stop = std::chrono::steady_clock::now();
  const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
  return static_cast<std::uint64_t>(std::max<std::int64_t>(ns, 1));
}

bool metric_less(const Metric& a, const Metric& b) { return a.p() < b.p(); }

TimeSummary summarize(const std::vector<const BenchRecord*>& runs) {
  std::vector<double> times;
  std::vector<double> calls;
  TimeSummary s;
  s.min_ns = runs.front()->wall_time_ns;
  s.max_ns = runs.front()->wall_time_ns;
  for (const BenchRecord* r : runs) {
    times.push_back(static_cast<double>(r->wall_time_ns));
    calls.push_back(static_cast<double>(r->distance_calls_total));
    s.min_ns = std::min(s.min_ns, r->wall_time_ns);
    s.max_ns = std::max(s.max_ns, r->wall_time_ns);
  }
  s.median_ns = median(std::move(times));
  s.median_calls = median(std::move(calls));
  return s;
}

}  // namespace

std::vector<std::size_t> desk_ladder() {
  std::vector<std::size_t> sizes;
  for (int k = 15; k <= 21; ++k) sizes.push_back(std::size_t{1} << k);
  return sizes;
}

std::vector<Metric> sweep_metrics() {
  return {Metric::minkowski(1.0), Metric::minkowski(2.0), Metric::minkowski(3.1415),
          Metric::chebyshev()};
}

void validate(const BenchPlan& plan) {
  if (plan.sizes.empty() || plan.metrics.empty() || plan.algos.empty()) {
    throw_invalid("empty plan axis");
  }
  if (plan.reps < 1) throw_invalid("reps must be at least 1");
  if (plan.cutoff < 2) throw_invalid("cutoff must be at least 2");
  for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
    if (plan.sizes[i] < 2) throw_invalid("plan sizes must be at least 2");
    if (i > 0 && plan.sizes[i] <= plan.sizes[i - 1]) {
      throw_invalid("plan sizes must be strictly increasing");
    }
  }
  validate(GenSpec{plan.sizes.front(), plan.base_seed, plan.distribution});
}

std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t rep, std::size_t n) {
  return (base_seed + rep) ^ (static_cast<std::uint64_t>(n) * 0x9E3779B97F4A7C15ULL);
}

std::vector<BenchRecord> run_plan(const BenchPlan& plan, const BenchProgress& progress) {
  validate(plan);
  std::vector<BenchRecord> records;

  for (std::size_t n : plan.sizes) {
    auto algos = plan.algos;
    std::erase_if(algos, [&](Algorithm a) { return a == Algorithm::Brute && n > plan.brute_max_n; });

    for (std::size_t rep = 0; rep < plan.reps; ++rep) {
      const std::uint64_t seed = instance_seed(plan.base_seed, rep, n);
      const PointSet points = generate(GenSpec{n, seed, plan.distribution});

      for (Algorithm algo : algos) {
        for (const Metric& metric : plan.metrics) {
          const SolveOptions options{algo, plan.cutoff, {}};
          PairResult result;
          try {
            if (rep == 0 && plan.warmup) time_solve(points, metric, options, result);
            BenchRecord record;
            record.wall_time_ns = time_solve(points, metric, options, result);
            record.n = n;
            record.algo = algo;
            record.metric = metric;
            record.seed = seed;
            record.rep = rep;
            record.distance_calls_total = result.counters.distance_calls_total;
            record.distance_calls_combine = result.counters.distance_calls_combine;
            record.result_dist = result.dist;
            records.push_back(record);
            if (progress) progress(record);
          } catch (const Error& e) {
            throw Error(e.kind(), coordinates(n, rep, algo, metric) + ": " + e.what());
          }
        }
      }
    }
  }
  return records;
}

double median(std::vector<double> values) {
  if (values.empty()) throw_invalid("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<RatioRow> ratio_table(std::span<const BenchRecord> records) {
  // (n, p) -> rep -> record, per algorithm.
  using Key = std::pair<std::size_t, double>;
  std::map<Key, std::map<std::size_t, const BenchRecord*>> basic2;
  std::map<Key, std::map<std::size_t, const BenchRecord*>> basic7;
  std::map<Key, Metric> metrics;

  for (const BenchRecord& r : records) {
    if (r.algo == Algorithm::Brute) continue;
    const Key key{r.n, r.metric.p()};
    metrics.emplace(key, r.metric);
    auto& slot = (r.algo == Algorithm::Basic2 ? basic2 : basic7)[key];
    if (!slot.emplace(r.rep, &r).second) {
      throw_invalid("duplicate record for " + coordinates(r.n, r.rep, r.algo, r.metric));
    }
  }
  if (metrics.empty()) throw_invalid("no BASIC2/BASIC7 records to pair");

  std::vector<RatioRow> rows;
  for (const auto& [key, metric] : metrics) {
    auto& runs2 = basic2[key];
    auto& runs7 = basic7[key];
    for (const auto& [rep, record] : runs2) {
      if (!runs7.contains(rep)) {
        throw_invalid("missing record for " + coordinates(key.first, rep, Algorithm::Basic7, metric));
      }
    }
    for (const auto& [rep, record] : runs7) {
      if (!runs2.contains(rep)) {
        throw_invalid("missing record for " + coordinates(key.first, rep, Algorithm::Basic2, metric));
      }
    }

    std::vector<const BenchRecord*> list2;
    std::vector<const BenchRecord*> list7;
    for (const auto& [rep, record] : runs2) list2.push_back(record);
    for (const auto& [rep, record] : runs7) list7.push_back(record);

    RatioRow row;
    row.n = key.first;
    row.metric = metric;
    row.reps = list2.size();
    row.basic2 = summarize(list2);
    row.basic7 = summarize(list7);
    row.time_ratio = row.basic2.median_ns / row.basic7.median_ns;
    row.calls_ratio = row.basic7.median_calls > 0 ? row.basic2.median_calls / row.basic7.median_calls
                                                  : 1.0;
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const RatioRow& a, const RatioRow& b) {
    return a.n != b.n ? a.n < b.n : metric_less(a.metric, b.metric);
  });
  return rows;
}

void write_records_csv(std::span<const BenchRecord> records, std::ostream& out) {
  out << "n,algo,metric,seed,rep,wall_time_ns,distance_calls_total,distance_calls_combine,"
         "result_dist\n";
  for (const BenchRecord& r : records) {
    out << r.n << ',' << to_string(r.algo) << ',' << r.metric.to_string() << ',' << r.seed << ','
        << r.rep << ',' << r.wall_time_ns << ',' << r.distance_calls_total << ','
        << r.distance_calls_combine << ',' << format_shortest(r.result_dist) << '\n';
  }
}

void write_ratios_csv(std::span<const RatioRow> rows, std::ostream& out) {
  out << "n,metric,reps,basic2_median_ns,basic2_min_ns,basic2_max_ns,basic7_median_ns,"
         "basic7_min_ns,basic7_max_ns,time_ratio,calls_ratio\n";
  for (const RatioRow& r : rows) {
    out << r.n << ',' << r.metric.to_string() << ',' << r.reps << ','
        << format_shortest(r.basic2.median_ns) << ',' << r.basic2.min_ns << ',' << r.basic2.max_ns
        << ',' << format_shortest(r.basic7.median_ns) << ',' << r.basic7.min_ns << ','
        << r.basic7.max_ns << ',' << format_shortest(r.time_ratio) << ','
        << format_shortest(r.calls_ratio) << '\n';
  }
}

void write_ratios_text(std::span<const RatioRow> rows, std::ostream& out) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::right << std::setw(10) << "n" << std::setw(8) << "metric" << std::setw(6) << "reps"
      << std::setw(14) << "basic2_ms" << std::setw(14) << "basic7_ms" << std::setw(12)
      << "time_ratio" << std::setw(13) << "calls_ratio" << '\n';
  out << std::fixed;
  for (const RatioRow& r : rows) {
    out << std::setw(10) << r.n << std::setw(8) << r.metric.to_string() << std::setw(6) << r.reps
        << std::setprecision(3) << std::setw(14) << r.basic2.median_ns / 1e6 << std::setw(14)
        << r.basic7.median_ns / 1e6 << std::setprecision(4) << std::setw(12) << r.time_ratio
        << std::setw(13) << r.calls_ratio << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

void write_ratios_gnuplot(std::span<const RatioRow> rows, std::ostream& out) {
  std::vector<Metric> order;
  for (const RatioRow& r : rows) {
    if (std::find(order.begin(), order.end(), r.metric) == order.end()) order.push_back(r.metric);
  }
  std::sort(order.begin(), order.end(), metric_less);

  bool first = true;
  for (const Metric& metric : order) {
    if (!first) out << "\n\n";
    first = false;
    out << "# metric " << metric.to_string() << "\n# n time_ratio calls_ratio\n";
    for (const RatioRow& r : rows) {
      if (r.metric != metric) continue;
      out << r.n << ' ' << format_shortest(r.time_ratio) << ' ' << format_shortest(r.calls_ratio)
          << '\n';
    }
  }
}

}  // namespace closest_pair
