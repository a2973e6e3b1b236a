#pragma once

#include <stdexcept>
#include <string>

namespace wreathkit {

// Base for every error raised by the library. Messages are stable strings
// (e.g. "degree mismatch") so callers and tests can match on them.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by operations that must enumerate every element of a group whose
// order exceeds the configured element limit.
class LimitExceeded : public Error {
 public:
  explicit LimitExceeded(const std::string& what = "enumeration limit exceeded")
      : Error(what) {}
};

}  // namespace wreathkit
