#pragma once

#include <stdexcept>
#include <string>

namespace zsa {

/// Malformed game file or command-line input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural property that must hold for every zero-sum game did not
/// hold (e.g. several sink components). Carries a human-readable report.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integration produced a non-finite state.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zsa
