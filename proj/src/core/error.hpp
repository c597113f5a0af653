#pragma once

#include <stdexcept>
#include <string>

namespace closest_pair {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  Io,
};

// All recoverable failures in the core are reported through this type; the C
// API maps ErrorKind onto its status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& message) {
  throw Error(ErrorKind::InvalidArgument, message);
}

}  // namespace closest_pair
