#include "closest_pair/closest_pair.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>
#include <vector>

#include "bench.hpp"
#include "error.hpp"
#include "instances.hpp"
#include "solver.hpp"
#include "verify.hpp"

namespace cp = closest_pair;

struct cp_pointset {
  cp::PointSet points;
};

struct cp_bench_records {
  std::vector<cp::BenchRecord> records;
};

struct cp_ratio_table {
  std::vector<cp::RatioRow> rows;
};

struct cp_verify_report {
  cp::VerifyReport report;
};

namespace {

thread_local std::string last_error;

cp_status fail(cp_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class Body>
cp_status guarded(Body&& body) {
  try {
    body();
    return CP_OK;
  } catch (const cp::Error& e) {
    switch (e.kind()) {
      case cp::ErrorKind::InvalidArgument:
        return fail(CP_ERR_INVALID_ARGUMENT, e.what());
      case cp::ErrorKind::Parse:
        return fail(CP_ERR_PARSE, e.what());
      case cp::ErrorKind::Io:
        return fail(CP_ERR_IO, e.what());
    }
    return fail(CP_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CP_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(CP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CP_ERR_INTERNAL, "unknown error");
  }
}

void require(bool condition, const char* message) {
  if (!condition) cp::throw_invalid(message);
}

cp::Metric to_metric(cp_metric m) { return cp::Metric::minkowski(m.p); }

cp_metric from_metric(const cp::Metric& m) { return cp_metric{m.p()}; }

cp::Algorithm to_algorithm(cp_algorithm a) {
  switch (a) {
    case CP_ALGO_BASIC2:
      return cp::Algorithm::Basic2;
    case CP_ALGO_BASIC7:
      return cp::Algorithm::Basic7;
    case CP_ALGO_BRUTE:
      return cp::Algorithm::Brute;
  }
  cp::throw_invalid("unknown algorithm value " + std::to_string(static_cast<int>(a)));
}

cp_algorithm from_algorithm(cp::Algorithm a) {
  switch (a) {
    case cp::Algorithm::Basic2:
      return CP_ALGO_BASIC2;
    case cp::Algorithm::Basic7:
      return CP_ALGO_BASIC7;
    case cp::Algorithm::Brute:
      return CP_ALGO_BRUTE;
  }
  return CP_ALGO_BASIC2;
}

cp_result from_pair_result(const cp::PairResult& r) {
  const auto& c = r.counters;
  return cp_result{r.index_a,
                   r.index_b,
                   r.dist,
                   {c.distance_calls_total, c.distance_calls_combine, c.combine_invocations,
                    c.max_slab_points, c.recursion_depth_max}};
}

cp::Distribution to_distribution(const cp_gen_spec& spec) {
  switch (spec.distribution) {
    case CP_DIST_UNIFORM:
      return cp::UniformUnitSquare{};
    case CP_DIST_BOX:
      return cp::UniformBox{spec.box[0], spec.box[1], spec.box[2], spec.box[3]};
    case CP_DIST_CLUSTERED:
      return cp::Clustered{spec.clusters, spec.sigma};
  }
  cp::throw_invalid("unknown distribution value");
}

cp_bench_record from_record(const cp::BenchRecord& r) {
  return cp_bench_record{r.n,
                         from_algorithm(r.algo),
                         from_metric(r.metric),
                         r.seed,
                         r.rep,
                         r.wall_time_ns,
                         r.distance_calls_total,
                         r.distance_calls_combine,
                         r.result_dist};
}

cp::BenchRecord to_record(const cp_bench_record& r) {
  cp::BenchRecord out;
  out.n = r.n;
  out.algo = to_algorithm(r.algo);
  out.metric = to_metric(r.metric);
  out.seed = r.seed;
  out.rep = r.rep;
  out.wall_time_ns = r.wall_time_ns;
  out.distance_calls_total = r.distance_calls_total;
  out.distance_calls_combine = r.distance_calls_combine;
  out.result_dist = r.result_dist;
  return out;
}

template <class Writer>
void write_to(const char* path, Writer&& writer) {
  require(path != nullptr, "path is null");
  const std::string target(path);
  if (target == "-") {
    writer(std::cout);
    std::cout.flush();
    if (!std::cout) throw cp::Error(cp::ErrorKind::Io, "write to standard output failed");
    return;
  }
  std::ofstream out(target, std::ios::binary);
  if (!out) throw cp::Error(cp::ErrorKind::Io, "cannot open '" + target + "' for writing");
  writer(out);
  out.close();
  if (!out) throw cp::Error(cp::ErrorKind::Io, "write to '" + target + "' failed");
}

const std::size_t kDefaultSizes[] = {1u << 15, 1u << 16, 1u << 17, 1u << 18,
                                     1u << 19, 1u << 20, 1u << 21};
const cp_metric kDefaultMetrics[] = {{1.0}, {2.0}, {3.1415}, {INFINITY}};
const cp_algorithm kDefaultAlgos[] = {CP_ALGO_BASIC2, CP_ALGO_BASIC7};

}  // namespace

extern "C" {

const char* cp_version(void) { return "1.0.0"; }

const char* cp_last_error(void) { return last_error.c_str(); }

cp_status cp_metric_parse(const char* text, cp_metric* out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = from_metric(cp::Metric::parse(text));
  });
}

cp_status cp_metric_name(cp_metric metric, char* buffer, size_t size) {
  return guarded([&] {
    require(buffer != nullptr, "null buffer");
    const std::string name = to_metric(metric).to_string();
    require(name.size() < size, "buffer too small");
    std::memcpy(buffer, name.c_str(), name.size() + 1);
  });
}

cp_status cp_algorithm_parse(const char* text, cp_algorithm* out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = from_algorithm(cp::parse_algorithm(text));
  });
}

const char* cp_algorithm_name(cp_algorithm algorithm) {
  switch (algorithm) {
    case CP_ALGO_BASIC2:
      return "BASIC2";
    case CP_ALGO_BASIC7:
      return "BASIC7";
    case CP_ALGO_BRUTE:
      return "BRUTE";
  }
  return nullptr;
}

void cp_gen_spec_init(cp_gen_spec* spec) {
  if (spec == nullptr) return;
  *spec = cp_gen_spec{2, 0, CP_DIST_UNIFORM, {0.0, 1.0, 0.0, 1.0}, 1, 0.01};
}

cp_status cp_distribution_parse(const char* text, cp_gen_spec* spec) {
  return guarded([&] {
    require(text != nullptr && spec != nullptr, "null argument");
    const cp::Distribution d = cp::parse_distribution(text);
    cp_gen_spec updated = *spec;
    if (std::holds_alternative<cp::UniformUnitSquare>(d)) {
      updated.distribution = CP_DIST_UNIFORM;
    } else if (const auto* box = std::get_if<cp::UniformBox>(&d)) {
      updated.distribution = CP_DIST_BOX;
      updated.box[0] = box->xmin;
      updated.box[1] = box->xmax;
      updated.box[2] = box->ymin;
      updated.box[3] = box->ymax;
    } else {
      const auto& c = std::get<cp::Clustered>(d);
      updated.distribution = CP_DIST_CLUSTERED;
      updated.clusters = c.clusters;
      updated.sigma = c.sigma;
    }
    *spec = updated;
  });
}

cp_status cp_pointset_create(const double* xy, size_t n, cp_pointset** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    require(xy != nullptr || n == 0, "null coordinate array");
    std::vector<cp::Point> points(n);
    for (std::size_t i = 0; i < n; ++i) points[i] = cp::Point{xy[2 * i], xy[2 * i + 1], i};
    *out = new cp_pointset{cp::PointSet(std::move(points))};
  });
}

cp_status cp_pointset_generate(const cp_gen_spec* spec, cp_pointset** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "null argument");
    *out = new cp_pointset{cp::generate(cp::GenSpec{spec->n, spec->seed, to_distribution(*spec)})};
  });
}

cp_status cp_pointset_read(const char* path, cp_pointset** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new cp_pointset{cp::read_points(std::string(path))};
  });
}

cp_status cp_pointset_write(const cp_pointset* points, const char* path) {
  return guarded([&] {
    require(points != nullptr && path != nullptr, "null argument");
    cp::write_points(points->points, std::string(path));
  });
}

size_t cp_pointset_size(const cp_pointset* points) {
  return points == nullptr ? 0 : points->points.size();
}

cp_status cp_pointset_get(const cp_pointset* points, size_t index, double* x, double* y) {
  return guarded([&] {
    require(points != nullptr && x != nullptr && y != nullptr, "null argument");
    require(index < points->points.size(), "point index out of range");
    *x = points->points[index].x;
    *y = points->points[index].y;
  });
}

void cp_pointset_destroy(cp_pointset* points) { delete points; }

cp_status cp_brute_force(const cp_pointset* points, cp_metric metric, cp_result* out) {
  return guarded([&] {
    require(points != nullptr && out != nullptr, "null argument");
    *out = from_pair_result(cp::brute_force(points->points, to_metric(metric)));
  });
}

cp_status cp_solve(const cp_pointset* points, cp_metric metric, cp_algorithm algorithm,
                   size_t cutoff, cp_result* out) {
  return cp_solve_observed(points, metric, algorithm, cutoff, nullptr, nullptr, out);
}

cp_status cp_solve_observed(const cp_pointset* points, cp_metric metric, cp_algorithm algorithm,
                            size_t cutoff, cp_combine_callback callback, void* user_data,
                            cp_result* out) {
  return guarded([&] {
    require(points != nullptr && out != nullptr, "null argument");
    cp::SolveOptions options{to_algorithm(algorithm), cutoff, {}};
    if (callback != nullptr) {
      options.observer = [callback, user_data](const cp::CombineEvent& e) {
        const cp_combine_event event{from_algorithm(e.algorithm), e.slab_left, e.slab_right,
                                     e.distance_calls, e.depth};
        callback(&event, user_data);
      };
    }
    *out = from_pair_result(cp::solve(points->points, to_metric(metric), options));
  });
}

void cp_bench_plan_init(cp_bench_plan* plan) {
  if (plan == nullptr) return;
  plan->sizes = kDefaultSizes;
  plan->n_sizes = std::size(kDefaultSizes);
  plan->reps = 10;
  plan->metrics = kDefaultMetrics;
  plan->n_metrics = std::size(kDefaultMetrics);
  plan->algos = kDefaultAlgos;
  plan->n_algos = std::size(kDefaultAlgos);
  plan->base_seed = 0;
  plan->cutoff = CP_DEFAULT_CUTOFF;
  plan->brute_max_n = 50000;
  plan->warmup = 1;
}

cp_status cp_bench_run(const cp_bench_plan* plan, cp_bench_progress progress, void* user_data,
                       cp_bench_records** out) {
  return guarded([&] {
    require(plan != nullptr && out != nullptr, "null argument");
    require(plan->sizes != nullptr || plan->n_sizes == 0, "null sizes array");
    require(plan->metrics != nullptr || plan->n_metrics == 0, "null metrics array");
    require(plan->algos != nullptr || plan->n_algos == 0, "null algos array");
    cp::BenchPlan p;
    p.sizes.assign(plan->sizes, plan->sizes + plan->n_sizes);
    p.reps = plan->reps;
    p.metrics.clear();
    for (std::size_t i = 0; i < plan->n_metrics; ++i) p.metrics.push_back(to_metric(plan->metrics[i]));
    p.algos.clear();
    for (std::size_t i = 0; i < plan->n_algos; ++i) p.algos.push_back(to_algorithm(plan->algos[i]));
    p.base_seed = plan->base_seed;
    p.cutoff = plan->cutoff;
    p.brute_max_n = plan->brute_max_n;
    p.warmup = plan->warmup != 0;

    cp::BenchProgress hook;
    if (progress != nullptr) {
      hook = [progress, user_data](const cp::BenchRecord& r) {
        const cp_bench_record record = from_record(r);
        progress(&record, user_data);
      };
    }
    auto records = cp::run_plan(p, hook);
    *out = new cp_bench_records{std::move(records)};
  });
}

cp_status cp_bench_records_create(cp_bench_records** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = new cp_bench_records{};
  });
}

cp_status cp_bench_records_append(cp_bench_records* records, const cp_bench_record* record) {
  return guarded([&] {
    require(records != nullptr && record != nullptr, "null argument");
    records->records.push_back(to_record(*record));
  });
}

size_t cp_bench_records_count(const cp_bench_records* records) {
  return records == nullptr ? 0 : records->records.size();
}

cp_status cp_bench_records_get(const cp_bench_records* records, size_t index,
                               cp_bench_record* out) {
  return guarded([&] {
    require(records != nullptr && out != nullptr, "null argument");
    require(index < records->records.size(), "record index out of range");
    *out = from_record(records->records[index]);
  });
}

cp_status cp_bench_records_write(const cp_bench_records* records, const char* path) {
  return guarded([&] {
    require(records != nullptr, "null records");
    write_to(path, [&](std::ostream& os) { cp::write_records_csv(records->records, os); });
  });
}

void cp_bench_records_destroy(cp_bench_records* records) { delete records; }

cp_status cp_ratio_table_compute(const cp_bench_records* records, cp_ratio_table** out) {
  return guarded([&] {
    require(records != nullptr && out != nullptr, "null argument");
    *out = new cp_ratio_table{cp::ratio_table(records->records)};
  });
}

size_t cp_ratio_table_count(const cp_ratio_table* table) {
  return table == nullptr ? 0 : table->rows.size();
}

cp_status cp_ratio_table_get(const cp_ratio_table* table, size_t index, cp_ratio_row* out) {
  return guarded([&] {
    require(table != nullptr && out != nullptr, "null argument");
    require(index < table->rows.size(), "row index out of range");
    const cp::RatioRow& r = table->rows[index];
    *out = cp_ratio_row{r.n,
                        from_metric(r.metric),
                        r.reps,
                        r.basic2.median_ns,
                        r.basic2.min_ns,
                        r.basic2.max_ns,
                        r.basic7.median_ns,
                        r.basic7.min_ns,
                        r.basic7.max_ns,
                        r.time_ratio,
                        r.calls_ratio};
  });
}

cp_status cp_ratio_table_write(const cp_ratio_table* table, cp_table_format format,
                               const char* path) {
  return guarded([&] {
    require(table != nullptr, "null table");
    write_to(path, [&](std::ostream& os) {
      switch (format) {
        case CP_FORMAT_CSV:
          cp::write_ratios_csv(table->rows, os);
          return;
        case CP_FORMAT_TEXT:
          cp::write_ratios_text(table->rows, os);
          return;
        case CP_FORMAT_GNUPLOT:
          cp::write_ratios_gnuplot(table->rows, os);
          return;
      }
      cp::throw_invalid("unknown table format");
    });
  });
}

void cp_ratio_table_destroy(cp_ratio_table* table) { delete table; }

void cp_verify_config_init(cp_verify_config* config) {
  if (config == nullptr) return;
  const cp::VerifyConfig defaults;
  config->n_max = defaults.n_max;
  config->trials = defaults.trials;
  config->seed = defaults.seed;
  config->metrics = kDefaultMetrics;
  config->n_metrics = std::size(kDefaultMetrics);
  config->cutoff = defaults.cutoff;
  config->relative_tolerance = defaults.relative_tolerance;
}

cp_status cp_verify_run(const cp_verify_config* config, cp_verify_report** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    require(config->metrics != nullptr || config->n_metrics == 0, "null metrics array");
    cp::VerifyConfig c;
    c.n_max = config->n_max;
    c.trials = config->trials;
    c.seed = config->seed;
    c.metrics.clear();
    for (std::size_t i = 0; i < config->n_metrics; ++i) c.metrics.push_back(to_metric(config->metrics[i]));
    c.cutoff = config->cutoff;
    c.relative_tolerance = config->relative_tolerance;
    *out = new cp_verify_report{cp::run_verification(c)};
  });
}

int cp_verify_report_ok(const cp_verify_report* report) {
  return report != nullptr && report->report.ok() ? 1 : 0;
}

size_t cp_verify_report_tally_count(const cp_verify_report* report) {
  return report == nullptr ? 0 : report->report.tallies.size();
}

cp_status cp_verify_report_tally(const cp_verify_report* report, size_t index,
                                 cp_verify_tally* out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    require(index < report->report.tallies.size(), "tally index out of range");
    const cp::MetricTally& t = report->report.tallies[index];
    *out = cp_verify_tally{from_metric(t.metric), t.passed, t.trials, t.combine_invocations,
                           t.bound_violations};
  });
}

size_t cp_verify_report_fixture_count(const cp_verify_report* report) {
  return report == nullptr ? 0 : report->report.fixtures.size();
}

cp_status cp_verify_report_fixture(const cp_verify_report* report, size_t index,
                                   cp_verify_fixture* out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    require(index < report->report.fixtures.size(), "fixture index out of range");
    const cp::FixtureResult& f = report->report.fixtures[index];
    *out = cp_verify_fixture{f.name.c_str(), f.passed ? 1 : 0, f.detail.c_str()};
  });
}

size_t cp_verify_report_mismatch_count(const cp_verify_report* report) {
  return report == nullptr ? 0 : report->report.mismatches.size();
}

cp_status cp_verify_report_mismatch(const cp_verify_report* report, size_t index,
                                    cp_verify_mismatch* out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    require(index < report->report.mismatches.size(), "mismatch index out of range");
    const cp::Mismatch& m = report->report.mismatches[index];
    *out = cp_verify_mismatch{from_metric(m.metric), m.trial_seed, m.n,
                              from_algorithm(m.algorithm), m.what.c_str()};
  });
}

void cp_verify_report_destroy(cp_verify_report* report) { delete report; }

}  // extern "C"
