#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace closest_pair {

/// A point in the plane. `id` is the 0-based position in the original input
/// and is what results report.
struct Point {
  double x = 0.0;
  double y = 0.0;
  std::size_t id = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Distance kernels. Each is a stateless (or nearly so) functor so the solver can
// be instantiated once per metric and keep the hot loops free of dispatch.

struct ManhattanDistance {
  double operator()(const Point& a, const Point& b) const noexcept {
    return std::fabs(a.x - b.x) + std::fabs(a.y - b.y);
  }
};

struct EuclideanDistance {
  double operator()(const Point& a, const Point& b) const noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
  }
};

struct ChebyshevDistance {
  double operator()(const Point& a, const Point& b) const noexcept {
    return std::fmax(std::fabs(a.x - b.x), std::fabs(a.y - b.y));
  }
};

struct MinkowskiDistance {
  double p;
  double inv_p;

  explicit MinkowskiDistance(double order) : p(order), inv_p(1.0 / order) {}

  double operator()(const Point& a, const Point& b) const noexcept {
    const double sum = std::pow(std::fabs(a.x - b.x), p) + std::pow(std::fabs(a.y - b.y), p);
    return std::pow(sum, inv_p);
  }
};

/// Minkowski p-distance specification, 1 <= p <= infinity.
///
/// p = 1, 2 and infinity get dedicated kernels; every other p goes through the
/// general pow-based formula. Infinity is its own kind, never a large finite p.
class Metric {
 public:
  enum class Kind { Manhattan, Euclidean, General, Chebyshev };

  /// Throws Error(InvalidArgument) for p < 1 or NaN. p = +inf yields Chebyshev.
  static Metric minkowski(double p);
  static Metric chebyshev() { return Metric(Kind::Chebyshev, INFINITY); }

  /// Accepts a decimal >= 1 ("1", "2", "3.1415") or "inf"/"infinity" in any case.
  static Metric parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_infinite() const noexcept { return kind_ == Kind::Chebyshev; }
  /// The order p; +infinity for Chebyshev.
  double p() const noexcept { return p_; }

  /// Shortest decimal form of p, or "inf".
  std::string to_string() const;

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  Metric(Kind kind, double p) : kind_(kind), p_(p) {}

  Kind kind_;
  double p_;
};

/// Calls `fn` with the distance kernel matching `metric`.
template <class Fn>
decltype(auto) visit_distance(const Metric& metric, Fn&& fn) {
  switch (metric.kind()) {
    case Metric::Kind::Manhattan:
      return std::forward<Fn>(fn)(ManhattanDistance{});
    case Metric::Kind::Euclidean:
      return std::forward<Fn>(fn)(EuclideanDistance{});
    case Metric::Kind::Chebyshev:
      return std::forward<Fn>(fn)(ChebyshevDistance{});
    case Metric::Kind::General:
      break;
  }
  return std::forward<Fn>(fn)(MinkowskiDistance{metric.p()});
}

/// Minkowski distance between two points; symmetric, zero exactly on equal
/// coordinates.
double distance(const Metric& metric, const Point& a, const Point& b);

/// Wraps a distance kernel so every evaluation bumps a caller-owned counter.
/// All solver distance arithmetic goes through one of these.
template <class Kernel>
class CountingDistance {
 public:
  CountingDistance(Kernel kernel, std::uint64_t& counter) : kernel_(kernel), counter_(&counter) {}

  double operator()(const Point& a, const Point& b) const noexcept {
    ++*counter_;
    return kernel_(a, b);
  }

 private:
  Kernel kernel_;
  std::uint64_t* counter_;
};

}  // namespace closest_pair
