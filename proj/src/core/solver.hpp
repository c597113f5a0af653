#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geometry.hpp"

namespace closest_pair {

/// An input point set: n >= 2 finite points, ids 0..n-1 in input order.
class PointSet {
 public:
  /// Validates size, finiteness and that points[i].id == i.
  explicit PointSet(std::vector<Point> points);

  static PointSet from_coordinates(std::span<const std::pair<double, double>> coords);
  static PointSet from_coordinates(std::initializer_list<std::pair<double, double>> coords);

  std::span<const Point> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<Point> points_;
};

enum class Algorithm { Basic2, Basic7, Brute };

/// Case-insensitive "basic2" / "basic7" / "brute".
Algorithm parse_algorithm(std::string_view text);
/// "BASIC2" / "BASIC7" / "BRUTE".
std::string_view to_string(Algorithm algorithm);

/// Instrumentation for one solve. Every field starts at zero.
struct Counters {
  std::uint64_t distance_calls_total = 0;
  std::uint64_t distance_calls_combine = 0;
  std::uint64_t combine_invocations = 0;
  std::uint64_t max_slab_points = 0;
  std::uint64_t recursion_depth_max = 0;

  friend bool operator==(const Counters&, const Counters&) = default;
};

struct PairResult {
  std::size_t index_a = 0;  // always < index_b
  std::size_t index_b = 0;
  double dist = 0.0;
  Counters counters;

  friend bool operator==(const PairResult&, const PairResult&) = default;
};

/// A cross pair found by a combine step; index_a < index_b.
struct CrossPair {
  std::size_t index_a = 0;
  std::size_t index_b = 0;
  double dist = 0.0;

  friend bool operator==(const CrossPair&, const CrossPair&) = default;
};

/// Points in x-order (x, y, id) and y-order (y, x, id). The views hold copies of
/// the points so each carries its id.
struct SortedViews {
  std::vector<Point> by_x;
  std::vector<Point> by_y;
};

SortedViews make_sorted_views(const PointSet& points);

bool x_order_less(const Point& a, const Point& b) noexcept;
bool y_order_less(const Point& a, const Point& b) noexcept;

struct SplitResult {
  std::size_t left_size = 0;
  double x_median = 0.0;
};

/// Splits an x-ordered slice at its lower median by rank: the left half is the
/// first ceil(n/2) points. The matching y-ordered slice is stably partitioned
/// into `y_out`: the first `left_size` entries are Y_L, the rest Y_R, both still
/// y-ordered. Side membership compares the full (x, y, id) key against the last
/// left point, so it follows rank even when x values repeat.
/// Requires x_slice.size() >= 2 and equal slice sizes.
SplitResult split(std::span<const Point> x_slice, std::span<const Point> y_slice,
                  std::span<Point> y_out);

/// Keeps the points with |x - x_median| < delta, in order. `out` may alias
/// `side` (in-place compaction). Returns the number of points kept.
std::size_t slab_filter(std::span<const Point> side, double x_median, double delta,
                        std::span<Point> out);
std::vector<Point> slab_filter(std::span<const Point> side, double x_median, double delta);

/// Basic-2 combine: walks Y_L and Y_R in ascending y, evaluating for the lower of
/// the two current points its distance to the opposite current point and to
/// that point's successor. At most 2 * (|Y_L| + |Y_R|) distance evaluations.
/// Returns the best cross pair strictly closer than delta, if any.
std::optional<CrossPair> combine_basic2(std::span<const Point> y_left,
                                        std::span<const Point> y_right, double delta,
                                        const Metric& metric, Counters& counters);

/// Basic-7 combine: merges both sides by y and compares every slab point with
/// the next seven. At most 7 * (|Y_L| + |Y_R|) distance evaluations.
std::optional<CrossPair> combine_basic7(std::span<const Point> y_left,
                                        std::span<const Point> y_right, double delta,
                                        const Metric& metric, Counters& counters);

/// Reported once per combine invocation inside solve().
struct CombineEvent {
  Algorithm algorithm = Algorithm::Basic2;
  std::size_t slab_left = 0;
  std::size_t slab_right = 0;
  std::uint64_t distance_calls = 0;
  std::size_t depth = 0;
};

using CombineObserver = std::function<void(const CombineEvent&)>;

inline constexpr std::size_t kDefaultCutoff = 10;

struct SolveOptions {
  Algorithm algorithm = Algorithm::Basic2;
  std::size_t cutoff = kDefaultCutoff;
  CombineObserver observer;
};

/// Examines all n(n-1)/2 pairs; ties go to the lexicographically smallest
/// (index_a, index_b).
PairResult brute_force(const PointSet& points, const Metric& metric);

/// Divide and conquer with y-presorting. Subproblems of at most `cutoff` points
/// are solved by brute force. Throws Error(InvalidArgument) if cutoff < 2.
PairResult solve(const PointSet& points, const Metric& metric, const SolveOptions& options);
PairResult solve(const PointSet& points, const Metric& metric, Algorithm algorithm,
                 std::size_t cutoff = kDefaultCutoff);

}  // namespace closest_pair
