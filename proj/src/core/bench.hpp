#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "geometry.hpp"
#include "instances.hpp"
#include "solver.hpp"

namespace closest_pair {

/// One timed solve.
struct BenchRecord {
  std::size_t n = 0;
  Algorithm algo = Algorithm::Basic2;
  Metric metric = Metric::chebyshev();
  std::uint64_t seed = 0;  // instance seed actually used
  std::size_t rep = 0;
  std::uint64_t wall_time_ns = 0;
  std::uint64_t distance_calls_total = 0;
  std::uint64_t distance_calls_combine = 0;
  double result_dist = 0.0;
};

/// 2^15 ... 2^21.
std::vector<std::size_t> desk_ladder();
/// p = 1, 2, 3.1415, inf.
std::vector<Metric> sweep_metrics();

struct BenchPlan {
  std::vector<std::size_t> sizes = desk_ladder();
  std::size_t reps = 10;
  std::vector<Metric> metrics = sweep_metrics();
  std::vector<Algorithm> algos = {Algorithm::Basic2, Algorithm::Basic7};
  std::uint64_t base_seed = 0;
  std::size_t cutoff = kDefaultCutoff;
  std::size_t brute_max_n = 50'000;  // BRUTE is skipped above this size
  bool warmup = true;
  Distribution distribution = UniformUnitSquare{};
};

void validate(const BenchPlan& plan);

/// Seed of the instance shared by every (algo, metric) at (n, rep):
/// (base_seed + rep) XOR (n * 0x9E3779B97F4A7C15), all mod 2^64.
std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t rep, std::size_t n);

using BenchProgress = std::function<void(const BenchRecord&)>;

/// Runs the plan sequentially. For each size, one untimed warm-up solve per
/// (algo, metric); then for each rep one generated instance is solved by every
/// (algo, metric). Timing covers the solve call only (presorting included).
std::vector<BenchRecord> run_plan(const BenchPlan& plan, const BenchProgress& progress = {});

struct TimeSummary {
  double median_ns = 0.0;
  std::uint64_t min_ns = 0;
  std::uint64_t max_ns = 0;
  double median_calls = 0.0;
};

struct RatioRow {
  std::size_t n = 0;
  Metric metric = Metric::chebyshev();
  std::size_t reps = 0;
  TimeSummary basic2;
  TimeSummary basic7;
  double time_ratio = 0.0;   // median BASIC2 time / median BASIC7 time
  double calls_ratio = 0.0;  // median BASIC2 calls / median BASIC7 calls
};

/// One row per (n, metric), ordered by n then p. Every rep seen for one of
/// BASIC2/BASIC7 must exist for the other; BRUTE records are ignored.
std::vector<RatioRow> ratio_table(std::span<const BenchRecord> records);

double median(std::vector<double> values);

void write_records_csv(std::span<const BenchRecord> records, std::ostream& out);
void write_ratios_csv(std::span<const RatioRow> rows, std::ostream& out);
void write_ratios_text(std::span<const RatioRow> rows, std::ostream& out);
/// One data block per metric (gnuplot `index`), columns: n time_ratio calls_ratio.
void write_ratios_gnuplot(std::span<const RatioRow> rows, std::ostream& out);

}  // namespace closest_pair
