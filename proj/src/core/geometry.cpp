#include "geometry.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "error.hpp"
#include "text.hpp"

namespace closest_pair {

Metric Metric::minkowski(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw_invalid("Minkowski order must satisfy p >= 1");
  }
  if (std::isinf(p)) return chebyshev();
  if (p == 1.0) return Metric(Kind::Manhattan, 1.0);
  if (p == 2.0) return Metric(Kind::Euclidean, 2.0);
  return Metric(Kind::General, p);
}

Metric Metric::parse(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "inf" || lowered == "infinity") return chebyshev();

  double p = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, p);
  if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(p)) {
    throw_invalid("invalid metric '" + std::string(text) + "': expected a number >= 1 or 'inf'");
  }
  if (p < 1.0) {
    throw_invalid("invalid metric '" + std::string(text) + "': Minkowski order must be >= 1");
  }
  return minkowski(p);
}

std::string Metric::to_string() const {
  if (is_infinite()) return "inf";
  return format_shortest(p_);
}

double distance(const Metric& metric, const Point& a, const Point& b) {
  return visit_distance(metric, [&](auto kernel) { return kernel(a, b); });
}

}  // namespace closest_pair
