#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bench.hpp"
#include "geometry.hpp"
#include "solver.hpp"

namespace closest_pair {

/// A hand-built Basic-2 combine input with a known answer. The sides are
/// given in y-order and are passed through slab_filter before combining.
struct CombineFixture {
  std::string name;
  std::vector<Point> left;
  std::vector<Point> right;
  double x_median = 0.0;
  double delta = 0.0;
  Metric metric = Metric::minkowski(1.0);
  std::size_t expect_a = 0;
  std::size_t expect_b = 0;
  double expect_dist = 0.0;
};

/// The first opposite point above P0 is the closest (ties with the third
/// point under d1 resolve to the first one found).
CombineFixture first_element_fixture();
/// The second opposite point above P0 is closer than the first.
CombineFixture second_element_fixture();
std::vector<CombineFixture> combine_fixtures();

struct VerifyConfig {
  std::size_t n_max = 2000;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::vector<Metric> metrics = sweep_metrics();
  std::size_t cutoff = kDefaultCutoff;
  double relative_tolerance = 1e-9;
};

/// Trial i uses instance seed `seed + i`, uniform unit-square points, and a
/// size drawn from [2, n_max] by trial_size(). Running with trials = 1 and
/// seed = that instance seed therefore reproduces a single trial.
std::size_t trial_size(std::uint64_t trial_seed, std::size_t n_max);

struct Mismatch {
  Metric metric = Metric::chebyshev();
  std::uint64_t trial_seed = 0;
  std::size_t n = 0;
  Algorithm algorithm = Algorithm::Basic2;
  std::string what;
};

struct MetricTally {
  Metric metric = Metric::chebyshev();
  std::size_t passed = 0;
  std::size_t trials = 0;
  std::uint64_t combine_invocations = 0;
  std::uint64_t bound_violations = 0;
};

struct FixtureResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<MetricTally> tallies;
  std::vector<FixtureResult> fixtures;
  std::vector<Mismatch> mismatches;

  bool ok() const;
};

/// Throws Error(InvalidArgument) for trials == 0, n_max < 2, or no metrics.
void validate(const VerifyConfig& config);

FixtureResult run_fixture(const CombineFixture& fixture);

/// Cross-checks BASIC2 and BASIC7 against brute force on random instances,
/// checks the per-combine distance-call bounds (2 and 7 per slab point), and
/// runs the combine fixtures.
VerifyReport run_verification(const VerifyConfig& config);

}  // namespace closest_pair
