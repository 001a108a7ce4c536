#include "qzeros/error.hpp"

namespace qzeros {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::RangeUnsupported: return "RangeUnsupported";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::NonFiniteResult: return "NonFiniteResult";
    case ErrorKind::DerivativeNearZero: return "DerivativeNearZero";
    case ErrorKind::ZeroOnContour: return "ZeroOnContour";
    case ErrorKind::InsufficientHistory: return "InsufficientHistory";
    case ErrorKind::SearchFailed: return "SearchFailed";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace qzeros
