#include <cmath>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "geometry.hpp"
#include "oracle.hpp"

using namespace closest_pair;

namespace {

Point pt(double x, double y) { return Point{x, y, 0}; }

std::vector<Metric> sweep() {
  return {Metric::minkowski(1.0), Metric::minkowski(2.0), Metric::minkowski(3.1415),
          Metric::chebyshev()};
}

}  // namespace

TEST_CASE("distance examples") {
  CHECK(distance(Metric::minkowski(1.0), pt(0, 0), pt(0.5, 0)) == 0.5);
  CHECK(distance(Metric::chebyshev(), pt(0, 0), pt(1, 1)) == 1.0);
  CHECK(distance(Metric::minkowski(2.0), pt(0, 0), pt(3, 4)) == 5.0);
  // 2^(1/3.1415), 40-digit reference 1.246877102676593194...
  CHECK(std::fabs(distance(Metric::minkowski(3.1415), pt(0, 0), pt(1, 1)) -
                  1.2468771026765932) < 1e-15);
}

TEST_CASE("metric kinds and parsing") {
  CHECK(Metric::minkowski(1.0).kind() == Metric::Kind::Manhattan);
  CHECK(Metric::minkowski(2.0).kind() == Metric::Kind::Euclidean);
  CHECK(Metric::minkowski(3.1415).kind() == Metric::Kind::General);
  CHECK(Metric::minkowski(INFINITY) == Metric::chebyshev());

  CHECK(Metric::parse("1") == Metric::minkowski(1.0));
  CHECK(Metric::parse("3.1415").p() == 3.1415);
  CHECK(Metric::parse("inf").is_infinite());
  CHECK(Metric::parse("INF").is_infinite());
  CHECK(Metric::parse("1.5").to_string() == "1.5");
  CHECK(Metric::chebyshev().to_string() == "inf");
  CHECK(Metric::minkowski(2.0).to_string() == "2");

  for (const char* bad : {"0.5", "0", "-2", "nan", "", "2x", "abc", " 2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Metric::parse(bad), Error);
  }
  CHECK_THROWS_AS(Metric::minkowski(0.999), Error);
  CHECK_THROWS_AS(Metric::minkowski(NAN), Error);
}

TEST_CASE("distance agrees with the definition") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const Metric& m : sweep()) {
    for (int i = 0; i < 500; ++i) {
      const Point a = pt(u(rng), u(rng));
      const Point b = pt(u(rng), u(rng));
      const double expected = oracle::minkowski(m.p(), {a.x, a.y}, {b.x, b.y});
      CHECK(distance(m, a, b) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const Metric& m : sweep()) {
    CAPTURE(m.to_string());
    for (int i = 0; i < 2000; ++i) {
      const Point a = pt(u(rng), u(rng));
      const Point b = pt(u(rng), u(rng));
      const Point c = pt(u(rng), u(rng));
      const double ab = distance(m, a, b);
      REQUIRE(ab == distance(m, b, a));
      REQUIRE(ab > 0.0);
      REQUIRE(distance(m, a, a) == 0.0);
      REQUIRE(ab <= distance(m, a, c) + distance(m, c, b) + 1e-12);
    }
  }
}

TEST_CASE("distance is non-increasing in p") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto metrics = sweep();
  for (int i = 0; i < 2000; ++i) {
    const Point a = pt(u(rng), u(rng));
    const Point b = pt(u(rng), u(rng));
    for (std::size_t k = 1; k < metrics.size(); ++k) {
      const double lower_p = distance(metrics[k - 1], a, b);
      const double higher_p = distance(metrics[k], a, b);
      REQUIRE(higher_p <= lower_p * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("self distance is exactly zero") {
  for (const Metric& m : sweep()) {
    for (const Point& p : {pt(0, 0), pt(1e300, -1e300), pt(-0.0, 0.0), pt(1e-310, 3.5)}) {
      CHECK(distance(m, p, p) == 0.0);
    }
  }
}

TEST_CASE("counting wrapper bumps once per evaluation") {
  std::uint64_t calls = 0;
  CountingDistance dist(EuclideanDistance{}, calls);
  CHECK(dist(pt(0, 0), pt(3, 4)) == 5.0);
  dist(pt(0, 0), pt(1, 1));
  dist(pt(0, 0), pt(0, 0));
  CHECK(calls == 3);
}
