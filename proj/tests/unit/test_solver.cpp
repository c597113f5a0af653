#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "instances.hpp"
#include "oracle.hpp"
#include "solver.hpp"

using namespace closest_pair;

namespace {

const Algorithm kDivideAndConquer[] = {Algorithm::Basic2, Algorithm::Basic7};

std::vector<Metric> sweep() {
  return {Metric::minkowski(1.0), Metric::minkowski(2.0), Metric::minkowski(3.1415),
          Metric::chebyshev()};
}

PointSet to_pointset(const std::vector<oracle::Pt>& pts) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : pts) xy.emplace_back(p.x, p.y);
  return PointSet::from_coordinates(std::span<const std::pair<double, double>>(xy));
}

std::vector<oracle::Pt> to_oracle(const PointSet& ps) {
  std::vector<oracle::Pt> out;
  for (const Point& p : ps.points()) out.push_back({p.x, p.y});
  return out;
}

// The reported pair must be a real pair at the reported distance.
void check_pair_realises(const PointSet& ps, const Metric& m, const PairResult& r) {
  REQUIRE(r.index_a < r.index_b);
  REQUIRE(r.index_b < ps.size());
  const double d = oracle::minkowski(m.p(), {ps[r.index_a].x, ps[r.index_a].y},
                                     {ps[r.index_b].x, ps[r.index_b].y});
  REQUIRE(d == doctest::Approx(r.dist).epsilon(1e-12));
}

}  // namespace

TEST_CASE("point set validation") {
  CHECK_THROWS_AS(PointSet::from_coordinates({{0.0, 0.0}}), Error);
  CHECK_THROWS_AS(PointSet::from_coordinates({}), Error);
  CHECK_THROWS_AS(PointSet::from_coordinates({{0.0, 0.0}, {NAN, 1.0}}), Error);
  CHECK_THROWS_AS(PointSet::from_coordinates({{0.0, 0.0}, {INFINITY, 1.0}}), Error);
  CHECK_THROWS_AS(PointSet(std::vector<Point>{{0, 0, 0}, {1, 1, 5}}), Error);
  const PointSet ok = PointSet::from_coordinates({{0.0, 0.0}, {1.0, 1.0}});
  CHECK(ok.size() == 2);
  CHECK(ok[1].id == 1);
}

TEST_CASE("algorithm names") {
  CHECK(parse_algorithm("basic2") == Algorithm::Basic2);
  CHECK(parse_algorithm("BASIC7") == Algorithm::Basic7);
  CHECK(parse_algorithm("Brute") == Algorithm::Brute);
  CHECK_THROWS_AS(parse_algorithm("basic3"), Error);
  CHECK(to_string(Algorithm::Basic2) == "BASIC2");
  CHECK(to_string(Algorithm::Basic7) == "BASIC7");
  CHECK(to_string(Algorithm::Brute) == "BRUTE");
}

TEST_CASE("brute force call counts") {
  const PointSet two = PointSet::from_coordinates({{0.0, 0.0}, {1.0, 0.0}});
  CHECK(brute_force(two, Metric::minkowski(2.0)).counters.distance_calls_total == 1);
  const PointSet four = PointSet::from_coordinates({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const PairResult r = brute_force(four, Metric::minkowski(2.0));
  CHECK(r.counters.distance_calls_total == 6);
  CHECK(r.counters.combine_invocations == 0);
  CHECK(r.index_a == 0);
  CHECK(r.index_b == 1);
  CHECK(r.dist == 1.0);
}

TEST_CASE("brute force matches the independent scan bit for bit") {
  const auto pts = oracle::random_points(50, 7);
  const PointSet ps = to_pointset(pts);
  for (const Metric& m : {Metric::minkowski(2.0), Metric::minkowski(1.0), Metric::chebyshev()}) {
    const auto expect = oracle::closest_pair(m.p(), pts);
    const PairResult r = brute_force(ps, m);
    CHECK(r.index_a == expect.a);
    CHECK(r.index_b == expect.b);
    CHECK(r.dist == expect.dist);
    CHECK(r.counters.distance_calls_total == 50 * 49 / 2);
  }
}

TEST_CASE("all algorithms agree on a generated instance") {
  const PointSet ps = generate(GenSpec{1000, 42, UniformUnitSquare{}});
  const Metric m = Metric::minkowski(1.0);
  const PairResult brute = brute_force(ps, m);
  for (Algorithm algo : kDivideAndConquer) {
    const PairResult r = solve(ps, m, algo);
    CHECK(r.index_a == brute.index_a);
    CHECK(r.index_b == brute.index_b);
    CHECK(r.dist == brute.dist);
  }
  CHECK(solve(ps, m, Algorithm::Brute) == brute);
}

TEST_CASE("collinear points with a close pair across the split") {
  std::vector<std::pair<double, double>> xy;
  for (int i = 0; i < 10; ++i) xy.emplace_back(i, 0.0);
  xy.emplace_back(0.25, 0.0);
  const PointSet ps = PointSet::from_coordinates(std::span<const std::pair<double, double>>(xy));
  for (const Metric& m : sweep()) {
    for (Algorithm algo : {Algorithm::Basic2, Algorithm::Basic7, Algorithm::Brute}) {
      for (std::size_t cutoff : {2, 3, 10}) {
        const PairResult r = solve(ps, m, algo, cutoff);
        CHECK(r.index_a == 0);
        CHECK(r.index_b == 10);
        CHECK(r.dist == 0.25);
      }
    }
  }
}

TEST_CASE("cutoff below two is rejected") {
  const PointSet ps = PointSet::from_coordinates({{0, 0}, {1, 0}, {2, 0}});
  CHECK_THROWS_AS(solve(ps, Metric::minkowski(2.0), Algorithm::Basic2, 1), Error);
  CHECK_THROWS_AS(solve(ps, Metric::minkowski(2.0), Algorithm::Basic7, 0), Error);
}

TEST_CASE("two and three point inputs at the smallest cutoff") {
  const PointSet two = PointSet::from_coordinates({{1.0, 1.0}, {0.0, 0.0}});
  const PointSet three = PointSet::from_coordinates({{0.0, 0.0}, {5.0, 0.0}, {5.5, 0.0}});
  for (Algorithm algo : kDivideAndConquer) {
    const PairResult r2 = solve(two, Metric::chebyshev(), algo, 2);
    CHECK(r2.index_a == 0);
    CHECK(r2.index_b == 1);
    CHECK(r2.dist == 1.0);
    const PairResult r3 = solve(three, Metric::minkowski(2.0), algo, 2);
    CHECK(r3.index_a == 1);
    CHECK(r3.index_b == 2);
    CHECK(r3.dist == 0.5);
  }
}

TEST_CASE("property: divide and conquer equals the oracle on random inputs") {
  for (unsigned trial = 0; trial < 60; ++trial) {
    std::mt19937 size_rng(trial);
    const std::size_t n = 2 + size_rng() % 600;
    const auto pts = oracle::random_points(n, 1000 + trial, -5.0, 5.0);
    const PointSet ps = to_pointset(pts);
    for (const Metric& m : sweep()) {
      const auto expect = oracle::closest_pair(m.p(), pts);
      for (Algorithm algo : kDivideAndConquer) {
        CAPTURE(trial);
        CAPTURE(n);
        CAPTURE(m.to_string());
        CAPTURE(to_string(algo));
        const PairResult r = solve(ps, m, algo);
        REQUIRE(r.dist == doctest::Approx(expect.dist).epsilon(1e-12));
        check_pair_realises(ps, m, r);
      }
    }
  }
}

TEST_CASE("property: tie-heavy grids match the oracle exactly") {
  for (unsigned trial = 0; trial < 40; ++trial) {
    const std::size_t n = 20 + trial * 7;
    const auto pts = oracle::grid_points(n, 77 + trial, 12);
    const PointSet ps = to_pointset(pts);
    for (const Metric& m : sweep()) {
      const auto expect = oracle::closest_pair(m.p(), pts);
      for (Algorithm algo : kDivideAndConquer) {
        for (std::size_t cutoff : {2, 3}) {
          CAPTURE(trial);
          CAPTURE(m.to_string());
          CAPTURE(to_string(algo));
          const PairResult r = solve(ps, m, algo, cutoff);
          REQUIRE(r.dist == expect.dist);
          check_pair_realises(ps, m, r);
        }
      }
    }
  }
}

TEST_CASE("property: the result does not depend on the cutoff") {
  const PointSet ps = generate(GenSpec{3000, 9, UniformUnitSquare{}});
  for (const Metric& m : sweep()) {
    for (Algorithm algo : kDivideAndConquer) {
      const double reference = solve(ps, m, algo, 10).dist;
      for (std::size_t cutoff : {2, 3, 64}) {
        CHECK(solve(ps, m, algo, cutoff).dist == reference);
      }
    }
  }
}

TEST_CASE("property: repeated solves are identical including counters") {
  const PointSet ps = generate(GenSpec{5000, 21, UniformUnitSquare{}});
  for (const Metric& m : sweep()) {
    for (Algorithm algo : kDivideAndConquer) {
      const PairResult first = solve(ps, m, algo);
      CHECK(solve(ps, m, algo) == first);
    }
  }
}

TEST_CASE("property: recursion depth is about log2(n / cutoff)") {
  for (std::size_t n : {11, 100, 1000, 4096, 10000, 33333}) {
    const PointSet ps = generate(GenSpec{n, n, UniformUnitSquare{}});
    const auto expected =
        static_cast<long>(std::ceil(std::log2(static_cast<double>(n) / kDefaultCutoff)));
    for (Algorithm algo : kDivideAndConquer) {
      const auto depth = static_cast<long>(
          solve(ps, Metric::minkowski(2.0), algo).counters.recursion_depth_max);
      CAPTURE(n);
      CHECK(std::labs(depth - expected) <= 1);
    }
  }
}

TEST_CASE("property: BASIC2 spends fewer distance calls than BASIC7") {
  for (std::size_t n : {1000, 5000, 20000}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const PointSet ps = generate(GenSpec{n, seed, UniformUnitSquare{}});
      for (const Metric& m : sweep()) {
        const Counters b2 = solve(ps, m, Algorithm::Basic2).counters;
        const Counters b7 = solve(ps, m, Algorithm::Basic7).counters;
        CAPTURE(n);
        CAPTURE(m.to_string());
        CHECK(b2.distance_calls_total < b7.distance_calls_total);
        CHECK(b2.distance_calls_combine < b7.distance_calls_combine);
        CHECK(b2.combine_invocations == b7.combine_invocations);
      }
    }
  }
}

TEST_CASE("property: counters are consistent and the combine bound holds") {
  const PointSet ps = generate(GenSpec{20000, 4, UniformUnitSquare{}});
  for (const Metric& m : sweep()) {
    for (Algorithm algo : kDivideAndConquer) {
      const std::uint64_t per_point = algo == Algorithm::Basic2 ? 2 : 7;
      std::uint64_t events = 0;
      std::uint64_t calls = 0;
      std::uint64_t violations = 0;
      SolveOptions options;
      options.algorithm = algo;
      options.observer = [&](const CombineEvent& e) {
        ++events;
        calls += e.distance_calls;
        if (e.distance_calls > per_point * (e.slab_left + e.slab_right)) ++violations;
        CHECK(e.algorithm == algo);
      };
      const PairResult r = solve(ps, m, options);
      CHECK(violations == 0);
      CHECK(events == r.counters.combine_invocations);
      CHECK(calls == r.counters.distance_calls_combine);
      CHECK(r.counters.distance_calls_combine < r.counters.distance_calls_total);
      CHECK(r.counters.max_slab_points <= ps.size());
    }
  }
}

TEST_CASE("degenerate inputs") {
  SUBCASE("all points identical") {
    std::vector<std::pair<double, double>> xy(40, {0.5, 0.5});
    const PointSet ps =
        PointSet::from_coordinates(std::span<const std::pair<double, double>>(xy));
    for (const Metric& m : sweep()) {
      for (Algorithm algo : kDivideAndConquer) {
        const PairResult r = solve(ps, m, algo, 2);
        CHECK(r.dist == 0.0);
        CHECK(r.index_a < r.index_b);
      }
    }
  }
  SUBCASE("shared x coordinate") {
    std::vector<std::pair<double, double>> xy;
    for (int i = 0; i < 50; ++i) xy.emplace_back(5.0, (i * 37 % 50) * 0.1);
    const PointSet ps =
        PointSet::from_coordinates(std::span<const std::pair<double, double>>(xy));
    const auto pts = to_oracle(ps);
    for (const Metric& m : sweep()) {
      for (Algorithm algo : kDivideAndConquer) {
        const PairResult r = solve(ps, m, algo, 2);
        CHECK(r.dist == oracle::closest_pair(m.p(), pts).dist);
        check_pair_realises(ps, m, r);
      }
    }
  }
  SUBCASE("shared y coordinate") {
    std::vector<std::pair<double, double>> xy;
    for (int i = 0; i < 50; ++i) xy.emplace_back((i * 13 % 50) * 0.3, -1.0);
    const PointSet ps =
        PointSet::from_coordinates(std::span<const std::pair<double, double>>(xy));
    const auto pts = to_oracle(ps);
    for (const Metric& m : sweep()) {
      for (Algorithm algo : kDivideAndConquer) {
        const PairResult r = solve(ps, m, algo, 3);
        CHECK(r.dist == oracle::closest_pair(m.p(), pts).dist);
        check_pair_realises(ps, m, r);
      }
    }
  }
}
