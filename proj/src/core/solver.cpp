#include "solver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <tuple>

#include "error.hpp"

namespace closest_pair {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Running minimum over candidate pairs. Strictly smaller wins, so the first
// pair found keeps ties.
struct Best {
  double dist = kInfinity;
  const Point* a = nullptr;
  const Point* b = nullptr;

  void offer(double d, const Point& p, const Point& q) noexcept {
    if (d < dist) {
      dist = d;
      a = &p;
      b = &q;
    }
  }

  bool found() const noexcept { return a != nullptr; }
};

CrossPair to_cross_pair(const Best& best) {
  auto [lo, hi] = std::minmax(best.a->id, best.b->id);
  return CrossPair{lo, hi, best.dist};
}

template <class Dist>
void brute_scan(std::span<const Point> points, Dist& dist, Best& best) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best.offer(dist(points[i], points[j]), points[i], points[j]);
    }
  }
}

template <class Dist>
std::optional<CrossPair> hopscotch(std::span<const Point> left, std::span<const Point> right,
                                   double delta, Dist& dist) {
  if (left.empty() || right.empty()) return std::nullopt;

  Best best{delta};
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < left.size() && j < right.size()) {
    best.offer(dist(left[i], right[j]), left[i], right[j]);
    if (left[i].y <= right[j].y) {
#ifndef CLOSEST_PAIR_FAULT_INJECTION
      if (j + 1 < right.size()) best.offer(dist(left[i], right[j + 1]), left[i], right[j + 1]);
#endif
      ++i;
    } else {
      if (i + 1 < left.size()) best.offer(dist(left[i + 1], right[j]), left[i + 1], right[j]);
      ++j;
    }
  }
  if (!best.found()) return std::nullopt;
  return to_cross_pair(best);
}

// `merged` must hold left.size() + right.size() points.
template <class Dist>
std::optional<CrossPair> seven_successors(std::span<const Point> left,
                                          std::span<const Point> right, double delta,
                                          Dist& dist, std::span<Point> merged) {
  const std::size_t m = left.size() + right.size();
  if (left.empty() || right.empty()) return std::nullopt;
  std::merge(left.begin(), left.end(), right.begin(), right.end(), merged.begin(), y_order_less);

  Best best{delta};
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t stop = std::min(m, i + 8);
    for (std::size_t j = i + 1; j < stop; ++j) {
      best.offer(dist(merged[i], merged[j]), merged[i], merged[j]);
    }
  }
  if (!best.found()) return std::nullopt;
  return to_cross_pair(best);
}

void record_slab(Counters& counters, std::size_t slab_points) {
  ++counters.combine_invocations;
  counters.max_slab_points = std::max<std::uint64_t>(counters.max_slab_points, slab_points);
}

template <class Kernel>
class DivideAndConquer {
 public:
  DivideAndConquer(Kernel kernel, const SolveOptions& options, std::span<const Point> points,
                   const SortedViews& views, Counters& counters)
      : kernel_(kernel),
        options_(options),
        points_(points),
        by_x_(views.by_x),
        arena_(2 * views.by_x.size() + 128),
        counters_(counters) {}

  Best run(std::span<const Point> by_y) { return recurse(0, by_x_.size(), by_y, 0, 0); }

 private:
  // Solves the x-order slice [lo, hi) whose y-ordered copy is `by_y`. Child
  // y-slices are carved from the arena starting at `arena_top`; everything
  // below that offset belongs to callers.
  Best recurse(std::size_t lo, std::size_t hi, std::span<const Point> by_y, std::size_t depth,
               std::size_t arena_top) {
    const std::size_t n = hi - lo;
    counters_.recursion_depth_max = std::max<std::uint64_t>(counters_.recursion_depth_max, depth);
    Best best;
    if (n <= options_.cutoff) {
      CountingDistance dist(kernel_, counters_.distance_calls_total);
      brute_scan(std::span<const Point>(by_x_).subspan(lo, n), dist, best);
      return best;
    }

    std::span<Point> children(arena_.data() + arena_top, n);
    const SplitResult cut = split(std::span<const Point>(by_x_).subspan(lo, n), by_y, children);
    const std::size_t mid = lo + cut.left_size;
    std::span<Point> y_left = children.first(cut.left_size);
    std::span<Point> y_right = children.subspan(cut.left_size);

    best = recurse(lo, mid, y_left, depth + 1, arena_top + n);
    const Best right = recurse(mid, hi, y_right, depth + 1, arena_top + n);
    if (right.dist < best.dist) best = right;

    // The children are done with the arena above arena_top + n, so the slab
    // sides can be compacted in place and Basic-7 can merge above them.
    const double delta = best.dist;
    y_left = y_left.first(slab_filter(y_left, cut.x_median, delta, y_left));
    y_right = y_right.first(slab_filter(y_right, cut.x_median, delta, y_right));

    std::uint64_t combine_calls = 0;
    CountingDistance dist(kernel_, combine_calls);
    std::optional<CrossPair> cross;
    if (options_.algorithm == Algorithm::Basic7) {
      std::span<Point> merged(arena_.data() + arena_top + n, y_left.size() + y_right.size());
      cross = seven_successors(y_left, y_right, delta, dist, merged);
    } else {
      cross = hopscotch(y_left, y_right, delta, dist);
    }

    record_slab(counters_, y_left.size() + y_right.size());
    counters_.distance_calls_combine += combine_calls;
    counters_.distance_calls_total += combine_calls;
    if (options_.observer) {
      options_.observer(CombineEvent{options_.algorithm, y_left.size(), y_right.size(),
                                     combine_calls, depth});
    }

    if (cross) {
      // The combine only reports pairs strictly below delta. Point back into
      // the x-order so the Best stays valid after the arena is reused.
      best.dist = cross->dist;
      best.a = &points_[cross->index_a];
      best.b = &points_[cross->index_b];
    }
    return best;
  }

  Kernel kernel_;
  const SolveOptions& options_;
  std::span<const Point> points_;  // indexed by id
  std::span<const Point> by_x_;
  std::vector<Point> arena_;
  Counters& counters_;
};

PairResult to_pair_result(const Best& best, const Counters& counters) {
  auto [lo, hi] = std::minmax(best.a->id, best.b->id);
  return PairResult{lo, hi, best.dist, counters};
}

}  // namespace

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw_invalid("point set too small: need at least 2 points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw_invalid("point " + std::to_string(i) + " has a non-finite coordinate");
    }
    if (p.id != i) {
      throw_invalid("point " + std::to_string(i) + " has id " + std::to_string(p.id) +
                    "; ids must equal input positions");
    }
  }
}

PointSet PointSet::from_coordinates(std::span<const std::pair<double, double>> coords) {
  std::vector<Point> points;
  points.reserve(coords.size());
  for (const auto& [x, y] : coords) points.push_back(Point{x, y, points.size()});
  return PointSet(std::move(points));
}

PointSet PointSet::from_coordinates(std::initializer_list<std::pair<double, double>> coords) {
  return from_coordinates(std::span<const std::pair<double, double>>(coords.begin(), coords.size()));
}

Algorithm parse_algorithm(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "basic2") return Algorithm::Basic2;
  if (lowered == "basic7") return Algorithm::Basic7;
  if (lowered == "brute") return Algorithm::Brute;
  throw_invalid("unknown algorithm '" + std::string(text) + "': expected basic2, basic7 or brute");
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Basic2:
      return "BASIC2";
    case Algorithm::Basic7:
      return "BASIC7";
    case Algorithm::Brute:
      return "BRUTE";
  }
  return "?";
}

bool x_order_less(const Point& a, const Point& b) noexcept {
  return std::tie(a.x, a.y, a.id) < std::tie(b.x, b.y, b.id);
}

bool y_order_less(const Point& a, const Point& b) noexcept {
  return std::tie(a.y, a.x, a.id) < std::tie(b.y, b.x, b.id);
}

SortedViews make_sorted_views(const PointSet& points) {
  SortedViews views{{points.points().begin(), points.points().end()},
                    {points.points().begin(), points.points().end()}};
  std::sort(views.by_x.begin(), views.by_x.end(), x_order_less);
  std::sort(views.by_y.begin(), views.by_y.end(), y_order_less);
  return views;
}

SplitResult split(std::span<const Point> x_slice, std::span<const Point> y_slice,
                  std::span<Point> y_out) {
  const std::size_t n = x_slice.size();
  const std::size_t left_size = (n + 1) / 2;
  const Point& last_left = x_slice[left_size - 1];

  std::size_t l = 0;
  std::size_t r = left_size;
  for (const Point& p : y_slice) {
    if (!x_order_less(last_left, p)) {
      y_out[l++] = p;
    } else {
      y_out[r++] = p;
    }
  }
  return SplitResult{left_size, x_slice[left_size - 1].x};
}

std::size_t slab_filter(std::span<const Point> side, double x_median, double delta,
                        std::span<Point> out) {
  std::size_t kept = 0;
  for (const Point& p : side) {
    if (std::fabs(p.x - x_median) < delta) out[kept++] = p;
  }
  return kept;
}

std::vector<Point> slab_filter(std::span<const Point> side, double x_median, double delta) {
  std::vector<Point> out(side.size());
  out.resize(slab_filter(side, x_median, delta, out));
  return out;
}

std::optional<CrossPair> combine_basic2(std::span<const Point> y_left,
                                        std::span<const Point> y_right, double delta,
                                        const Metric& metric, Counters& counters) {
  std::uint64_t calls = 0;
  auto cross = visit_distance(metric, [&](auto kernel) {
    CountingDistance dist(kernel, calls);
    return hopscotch(y_left, y_right, delta, dist);
  });
  record_slab(counters, y_left.size() + y_right.size());
  counters.distance_calls_combine += calls;
  counters.distance_calls_total += calls;
  return cross;
}

std::optional<CrossPair> combine_basic7(std::span<const Point> y_left,
                                        std::span<const Point> y_right, double delta,
                                        const Metric& metric, Counters& counters) {
  std::uint64_t calls = 0;
  std::vector<Point> merged(y_left.size() + y_right.size());
  auto cross = visit_distance(metric, [&](auto kernel) {
    CountingDistance dist(kernel, calls);
    return seven_successors(y_left, y_right, delta, dist, std::span<Point>(merged));
  });
  record_slab(counters, y_left.size() + y_right.size());
  counters.distance_calls_combine += calls;
  counters.distance_calls_total += calls;
  return cross;
}

PairResult brute_force(const PointSet& points, const Metric& metric) {
  Counters counters;
  Best best;
  visit_distance(metric, [&](auto kernel) {
    CountingDistance dist(kernel, counters.distance_calls_total);
    brute_scan(points.points(), dist, best);
  });
  return to_pair_result(best, counters);
}

PairResult solve(const PointSet& points, const Metric& metric, const SolveOptions& options) {
  if (options.cutoff < 2) throw_invalid("cutoff must be at least 2");
  if (options.algorithm == Algorithm::Brute) return brute_force(points, metric);

  const SortedViews views = make_sorted_views(points);
  Counters counters;
  const Best best = visit_distance(metric, [&](auto kernel) {
    DivideAndConquer solver(kernel, options, points.points(), views, counters);
    return solver.run(views.by_y);
  });
  return to_pair_result(best, counters);
}

PairResult solve(const PointSet& points, const Metric& metric, Algorithm algorithm,
                 std::size_t cutoff) {
  return solve(points, metric, SolveOptions{algorithm, cutoff, {}});
}

}  // namespace closest_pair
