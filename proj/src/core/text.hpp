#pragma once

#include <array>
#include <charconv>
#include <string>

namespace closest_pair {

/// Shortest decimal representation that parses back to the same double.
inline void append_shortest(std::string& out, double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.append(buf.data(), ptr);
}

inline std::string format_shortest(double value) {
  std::string out;
  append_shortest(out, value);
  return out;
}

}  // namespace closest_pair
