#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "solver.hpp"

namespace closest_pair {

struct UniformUnitSquare {
  friend bool operator==(const UniformUnitSquare&, const UniformUnitSquare&) = default;
};

struct UniformBox {
  double xmin = 0.0;
  double xmax = 1.0;
  double ymin = 0.0;
  double ymax = 1.0;
  friend bool operator==(const UniformBox&, const UniformBox&) = default;
};

/// k centres uniform in the unit square; point i belongs to centre i mod k and
/// is offset by an isotropic normal with standard deviation sigma.
struct Clustered {
  std::size_t clusters = 1;
  double sigma = 0.01;
  friend bool operator==(const Clustered&, const Clustered&) = default;
};

using Distribution = std::variant<UniformUnitSquare, UniformBox, Clustered>;

struct GenSpec {
  std::size_t n = 2;
  std::uint64_t seed = 0;
  Distribution distribution = UniformUnitSquare{};
};

/// Throws Error(InvalidArgument) describing the first invalid field.
void validate(const GenSpec& spec);

/// Deterministic in `spec`. Randomness comes from std::mt19937_64 seeded with
/// spec.seed; uniforms take the top 53 bits of each draw, normals use
/// Box-Muller, and coordinates are drawn x before y, point by point.
PointSet generate(const GenSpec& spec);

/// "uniform", "box:xmin,xmax,ymin,ymax" or "clustered:k,sigma".
Distribution parse_distribution(std::string_view text);
std::string to_string(const Distribution& distribution);

// Point files: one "x y" pair per line, '#' starts a comment line, blank lines
// are skipped, point id = order of appearance. Coordinates are written in
// the shortest decimal form that round-trips to the same binary64 value.

PointSet parse_points(std::istream& in);
/// "-" reads standard input.
PointSet read_points(const std::string& path);

void write_points(const PointSet& points, std::ostream& out);
/// "-" writes standard output.
void write_points(const PointSet& points, const std::string& path);

}  // namespace closest_pair
