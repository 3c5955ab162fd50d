#pragma once

#include <stdexcept>
#include <string>

namespace gramcode {

/// Raised when an input violates a documented precondition (bad symbol,
/// out-of-range parameter, malformed file). The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a well-formed computation cannot complete: a search budget
/// ran out, a decoder found no candidate, an interpolation failed its check.
/// The CLI maps these to exit code 3.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace gramcode
