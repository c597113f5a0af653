/*
 * closest_pair.h - C interface to the closest-pair toolkit.
 *
 * Objects are opaque handles created by cp_*_create / cp_*_generate / cp_*_run
 * style functions and released with the matching cp_*_destroy. Every function
 * that can fail returns a cp_status; on failure a human-readable message is
 * available from cp_last_error() on the same thread until the next failing
 * call. Output parameters are left untouched on failure.
 *
 * Path arguments accept "-" for standard input/output.
 */
#ifndef CLOSEST_PAIR_H
#define CLOSEST_PAIR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CLOSEST_PAIR_BUILDING)
#    define CP_API __declspec(dllexport)
#  else
#    define CP_API __declspec(dllimport)
#  endif
#else
#  define CP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cp_status {
  CP_OK = 0,
  CP_ERR_INVALID_ARGUMENT = 1, /* bad parameter, plan, metric, too few points */
  CP_ERR_PARSE = 2,            /* malformed point file or text */
  CP_ERR_IO = 3,               /* file could not be opened, read or written */
  CP_ERR_OUT_OF_MEMORY = 4,
  CP_ERR_INTERNAL = 5
} cp_status;

typedef enum cp_algorithm {
  CP_ALGO_BASIC2 = 0,
  CP_ALGO_BASIC7 = 1,
  CP_ALGO_BRUTE = 2
} cp_algorithm;

/* Minkowski order, 1 <= p; p = INFINITY selects the max norm. */
typedef struct cp_metric {
  double p;
} cp_metric;

typedef struct cp_pointset cp_pointset;
typedef struct cp_bench_records cp_bench_records;
typedef struct cp_ratio_table cp_ratio_table;
typedef struct cp_verify_report cp_verify_report;

CP_API const char* cp_version(void);
CP_API const char* cp_last_error(void);

/* "1", "2", "3.1415", ... (any decimal >= 1) or "inf". */
CP_API cp_status cp_metric_parse(const char* text, cp_metric* out);
/* Writes the canonical metric name ("2", "3.1415", "inf"), NUL-terminated. */
CP_API cp_status cp_metric_name(cp_metric metric, char* buffer, size_t size);
/* "basic2", "basic7", "brute" (case-insensitive). */
CP_API cp_status cp_algorithm_parse(const char* text, cp_algorithm* out);
/* "BASIC2", "BASIC7", "BRUTE"; NULL for an unknown value. */
CP_API const char* cp_algorithm_name(cp_algorithm algorithm);

/* ---- point sets ------------------------------------------------------- */

typedef enum cp_distribution {
  CP_DIST_UNIFORM = 0,  /* unit square */
  CP_DIST_BOX = 1,      /* box = {xmin, xmax, ymin, ymax} */
  CP_DIST_CLUSTERED = 2 /* clusters centres, normal offsets with sd sigma */
} cp_distribution;

typedef struct cp_gen_spec {
  size_t n;
  uint64_t seed;
  cp_distribution distribution;
  double box[4];
  size_t clusters;
  double sigma;
} cp_gen_spec;

/* Uniform unit square, n = 2, seed 0. */
CP_API void cp_gen_spec_init(cp_gen_spec* spec);
/* Sets the distribution fields from "uniform", "box:xmin,xmax,ymin,ymax" or
 * "clustered:k,sigma"; n and seed are not touched. */
CP_API cp_status cp_distribution_parse(const char* text, cp_gen_spec* spec);

/* xy holds n interleaved (x, y) pairs; ids are 0..n-1. */
CP_API cp_status cp_pointset_create(const double* xy, size_t n, cp_pointset** out);
CP_API cp_status cp_pointset_generate(const cp_gen_spec* spec, cp_pointset** out);
CP_API cp_status cp_pointset_read(const char* path, cp_pointset** out);
CP_API cp_status cp_pointset_write(const cp_pointset* points, const char* path);
CP_API size_t cp_pointset_size(const cp_pointset* points);
CP_API cp_status cp_pointset_get(const cp_pointset* points, size_t index, double* x, double* y);
CP_API void cp_pointset_destroy(cp_pointset* points);

/* ---- solving ---------------------------------------------------------- */

typedef struct cp_counters {
  uint64_t distance_calls_total;
  uint64_t distance_calls_combine;
  uint64_t combine_invocations;
  uint64_t max_slab_points;
  uint64_t recursion_depth_max;
} cp_counters;

typedef struct cp_result {
  size_t index_a; /* index_a < index_b */
  size_t index_b;
  double dist;
  cp_counters counters;
} cp_result;

typedef struct cp_combine_event {
  cp_algorithm algorithm;
  size_t slab_left;
  size_t slab_right;
  uint64_t distance_calls;
  size_t depth;
} cp_combine_event;

typedef void (*cp_combine_callback)(const cp_combine_event* event, void* user_data);

#define CP_DEFAULT_CUTOFF 10

CP_API cp_status cp_brute_force(const cp_pointset* points, cp_metric metric, cp_result* out);
CP_API cp_status cp_solve(const cp_pointset* points, cp_metric metric, cp_algorithm algorithm,
                          size_t cutoff, cp_result* out);
/* As cp_solve; `callback` (may be NULL) runs once per combine step. */
CP_API cp_status cp_solve_observed(const cp_pointset* points, cp_metric metric,
                                   cp_algorithm algorithm, size_t cutoff,
                                   cp_combine_callback callback, void* user_data,
                                   cp_result* out);

/* ---- benchmark -------------------------------------------------------- */

typedef struct cp_bench_plan {
  const size_t* sizes; /* strictly increasing */
  size_t n_sizes;
  size_t reps;
  const cp_metric* metrics;
  size_t n_metrics;
  const cp_algorithm* algos;
  size_t n_algos;
  uint64_t base_seed;
  size_t cutoff;
  size_t brute_max_n;
  int warmup; /* non-zero: one discarded solve per (n, algo, metric) */
} cp_bench_plan;

typedef struct cp_bench_record {
  size_t n;
  cp_algorithm algo;
  cp_metric metric;
  uint64_t seed;
  size_t rep;
  uint64_t wall_time_ns;
  uint64_t distance_calls_total;
  uint64_t distance_calls_combine;
  double result_dist;
} cp_bench_record;

typedef struct cp_ratio_row {
  size_t n;
  cp_metric metric;
  size_t reps;
  double basic2_median_ns;
  uint64_t basic2_min_ns;
  uint64_t basic2_max_ns;
  double basic7_median_ns;
  uint64_t basic7_min_ns;
  uint64_t basic7_max_ns;
  double time_ratio;
  double calls_ratio;
} cp_ratio_row;

typedef enum cp_table_format {
  CP_FORMAT_CSV = 0,
  CP_FORMAT_TEXT = 1,
  CP_FORMAT_GNUPLOT = 2
} cp_table_format;

typedef void (*cp_bench_progress)(const cp_bench_record* record, void* user_data);

/* Desk-scale defaults: sizes 2^15..2^21, 10 reps, p = 1, 2, 3.1415, inf,
 * BASIC2 + BASIC7, seed 0, cutoff 10, brute guard 50000, warm-up on. The
 * array pointers refer to static storage. */
CP_API void cp_bench_plan_init(cp_bench_plan* plan);
CP_API cp_status cp_bench_run(const cp_bench_plan* plan, cp_bench_progress progress,
                              void* user_data, cp_bench_records** out);

CP_API cp_status cp_bench_records_create(cp_bench_records** out);
CP_API cp_status cp_bench_records_append(cp_bench_records* records, const cp_bench_record* record);
CP_API size_t cp_bench_records_count(const cp_bench_records* records);
CP_API cp_status cp_bench_records_get(const cp_bench_records* records, size_t index,
                                      cp_bench_record* out);
/* CSV: n,algo,metric,seed,rep,wall_time_ns,distance_calls_total,
 *      distance_calls_combine,result_dist */
CP_API cp_status cp_bench_records_write(const cp_bench_records* records, const char* path);
CP_API void cp_bench_records_destroy(cp_bench_records* records);

CP_API cp_status cp_ratio_table_compute(const cp_bench_records* records, cp_ratio_table** out);
CP_API size_t cp_ratio_table_count(const cp_ratio_table* table);
CP_API cp_status cp_ratio_table_get(const cp_ratio_table* table, size_t index, cp_ratio_row* out);
CP_API cp_status cp_ratio_table_write(const cp_ratio_table* table, cp_table_format format,
                                      const char* path);
CP_API void cp_ratio_table_destroy(cp_ratio_table* table);

/* ---- verification ----------------------------------------------------- */

typedef struct cp_verify_config {
  size_t n_max;
  size_t trials;
  uint64_t seed;
  const cp_metric* metrics;
  size_t n_metrics;
  size_t cutoff;
  double relative_tolerance;
} cp_verify_config;

typedef struct cp_verify_tally {
  cp_metric metric;
  size_t passed;
  size_t trials;
  uint64_t combine_invocations;
  uint64_t bound_violations;
} cp_verify_tally;

/* Strings point into the report and live as long as it does. */
typedef struct cp_verify_fixture {
  const char* name;
  int passed;
  const char* detail;
} cp_verify_fixture;

typedef struct cp_verify_mismatch {
  cp_metric metric;
  uint64_t trial_seed;
  size_t n;
  cp_algorithm algorithm;
  const char* what;
} cp_verify_mismatch;

/* n_max 2000, 100 trials, seed 0, the four sweep metrics, cutoff 10, 1e-9. */
CP_API void cp_verify_config_init(cp_verify_config* config);
CP_API cp_status cp_verify_run(const cp_verify_config* config, cp_verify_report** out);
CP_API int cp_verify_report_ok(const cp_verify_report* report);
CP_API size_t cp_verify_report_tally_count(const cp_verify_report* report);
CP_API cp_status cp_verify_report_tally(const cp_verify_report* report, size_t index,
                                        cp_verify_tally* out);
CP_API size_t cp_verify_report_fixture_count(const cp_verify_report* report);
CP_API cp_status cp_verify_report_fixture(const cp_verify_report* report, size_t index,
                                          cp_verify_fixture* out);
CP_API size_t cp_verify_report_mismatch_count(const cp_verify_report* report);
CP_API cp_status cp_verify_report_mismatch(const cp_verify_report* report, size_t index,
                                           cp_verify_mismatch* out);
CP_API void cp_verify_report_destroy(cp_verify_report* report);

#ifdef __cplusplus
}
#endif

#endif /* CLOSEST_PAIR_H */
