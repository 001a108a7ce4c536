#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qzeros {

enum class ErrorKind {
  PoleAtOne,
  RangeUnsupported,
  DegenerateDenominator,
  NonFiniteResult,
  DerivativeNearZero,
  ZeroOnContour,
  InsufficientHistory,
  SearchFailed,
  UsageError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qzeros
