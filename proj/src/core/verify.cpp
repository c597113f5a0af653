#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "error.hpp"
#include "instances.hpp"
#include "text.hpp"

namespace closest_pair {
namespace {

bool within(double got, double expected, double relative_tolerance) {
  return std::fabs(got - expected) <= relative_tolerance * std::fabs(expected);
}

std::uint64_t combine_bound(Algorithm algorithm) {
  return algorithm == Algorithm::Basic7 ? 7 : 2;
}

}  // namespace

CombineFixture first_element_fixture() {
  // P0 sits just left of the dividing line x = 0; A, Q and P are the lowest
  // right-side points with pairwise d1 distance exactly delta. P0-A and P0-Q
  // tie at 0.51; A is met first. P lies on the slab boundary and is dropped.
  CombineFixture f;
  f.name = "first-element";
  f.left = {Point{-0.01, 0.0, 0}};
  f.right = {Point{0.5, 0.0, 1}, Point{0.0, 0.5, 2}, Point{1.0, 0.5, 3}};
  f.x_median = 0.0;
  f.delta = 1.0;
  f.metric = Metric::minkowski(1.0);
  f.expect_a = 0;
  f.expect_b = 1;
  f.expect_dist = 0.51;
  return f;
}

CombineFixture second_element_fixture() {
  // d1(P0, A) = 0.9 but d1(P0, B) = 0.85, with d1(A, B) = 1.55 >= delta, so the
  // answer is the second point above P0 on the opposite side.
  CombineFixture f;
  f.name = "second-element";
  f.left = {Point{0.0, 0.0, 0}};
  f.right = {Point{0.9, 0.0, 1}, Point{0.1, 0.75, 2}};
  f.x_median = 0.05;
  f.delta = 1.0;
  f.metric = Metric::minkowski(1.0);
  f.expect_a = 0;
  f.expect_b = 2;
  f.expect_dist = 0.85;
  return f;
}

std::vector<CombineFixture> combine_fixtures() {
  return {first_element_fixture(), second_element_fixture()};
}

std::size_t trial_size(std::uint64_t trial_seed, std::size_t n_max) {
  std::mt19937_64 engine(trial_seed);
  return 2 + static_cast<std::size_t>(engine() % (n_max - 1));
}

bool VerifyReport::ok() const {
  if (!mismatches.empty()) return false;
  for (const MetricTally& t : tallies) {
    if (t.passed != t.trials || t.bound_violations != 0) return false;
  }
  return std::all_of(fixtures.begin(), fixtures.end(),
                     [](const FixtureResult& f) { return f.passed; });
}

void validate(const VerifyConfig& config) {
  if (config.trials == 0) throw_invalid("trials must be at least 1");
  if (config.n_max < 2) throw_invalid("n-max must be at least 2");
  if (config.metrics.empty()) throw_invalid("at least one metric is required");
  if (config.cutoff < 2) throw_invalid("cutoff must be at least 2");
}

FixtureResult run_fixture(const CombineFixture& fixture) {
  FixtureResult result{fixture.name, true, {}};
  std::ostringstream detail;

  const auto left = slab_filter(fixture.left, fixture.x_median, fixture.delta);
  const auto right = slab_filter(fixture.right, fixture.x_median, fixture.delta);
  Counters counters;
  const auto cross = combine_basic2(left, right, fixture.delta, fixture.metric, counters);
  if (!cross) {
    result.passed = false;
    detail << "basic2 combine found no pair below delta";
  } else if (cross->index_a != fixture.expect_a || cross->index_b != fixture.expect_b ||
             std::fabs(cross->dist - fixture.expect_dist) > 1e-12) {
    result.passed = false;
    detail << "basic2 combine returned (" << cross->index_a << "," << cross->index_b << ") at "
           << format_shortest(cross->dist) << ", expected (" << fixture.expect_a << ","
           << fixture.expect_b << ") at " << format_shortest(fixture.expect_dist);
  }

  // The same points as a whole instance must agree with brute force.
  std::vector<Point> all = fixture.left;
  all.insert(all.end(), fixture.right.begin(), fixture.right.end());
  std::sort(all.begin(), all.end(), [](const Point& a, const Point& b) { return a.id < b.id; });
  const PointSet points(std::move(all));
  const double expected = brute_force(points, fixture.metric).dist;
  for (Algorithm algo : {Algorithm::Basic2, Algorithm::Basic7}) {
    const double got = solve(points, fixture.metric, algo, 2).dist;
    if (got != expected) {
      result.passed = false;
      detail << (detail.tellp() > 0 ? "; " : "") << to_string(algo) << " solve gave "
             << format_shortest(got) << ", brute force " << format_shortest(expected);
    }
  }
  result.detail = detail.str();
  return result;
}

VerifyReport run_verification(const VerifyConfig& config) {
  validate(config);
  VerifyReport report;
  for (const Metric& m : config.metrics) report.tallies.push_back(MetricTally{m, 0, 0, 0, 0});

  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t trial_seed = config.seed + trial;
    const std::size_t n = trial_size(trial_seed, config.n_max);
    const PointSet points = generate(GenSpec{n, trial_seed, UniformUnitSquare{}});

    for (MetricTally& tally : report.tallies) {
      const PairResult oracle = brute_force(points, tally.metric);
      bool pass = true;
      for (Algorithm algo : {Algorithm::Basic2, Algorithm::Basic7}) {
        SolveOptions options{algo, config.cutoff, {}};
        options.observer = [&](const CombineEvent& e) {
          ++tally.combine_invocations;
          const std::uint64_t slab = e.slab_left + e.slab_right;
          if (e.distance_calls > combine_bound(algo) * slab) {
            ++tally.bound_violations;
            pass = false;
            std::ostringstream what;
            what << "combine at depth " << e.depth << " made " << e.distance_calls
                 << " distance calls for " << slab << " slab points";
            report.mismatches.push_back(Mismatch{tally.metric, trial_seed, n, algo, what.str()});
          }
        };
        const PairResult got = solve(points, tally.metric, options);
        if (!within(got.dist, oracle.dist, config.relative_tolerance)) {
          pass = false;
          std::ostringstream what;
          what << "distance " << format_shortest(got.dist) << " (pair " << got.index_a << ","
               << got.index_b << ") but brute force found " << format_shortest(oracle.dist)
               << " (pair " << oracle.index_a << "," << oracle.index_b << ")";
          report.mismatches.push_back(Mismatch{tally.metric, trial_seed, n, algo, what.str()});
        }
      }
      ++tally.trials;
      if (pass) ++tally.passed;
    }
  }

  for (const CombineFixture& fixture : combine_fixtures()) {
    report.fixtures.push_back(run_fixture(fixture));
  }
  return report;
}

}  // namespace closest_pair
