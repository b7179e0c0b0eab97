#include "openqfi/error.hpp"

#include <cstdio>

namespace openqfi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NegativeRate: return "NegativeRate";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::DegenerateSteadyState: return "DegenerateSteadyState";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

ErrorClass classify(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadDimension:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InvalidParams:
    case ErrorKind::NegativeRate:
    case ErrorKind::InvalidState:
    case ErrorKind::NotNormalized:
    case ErrorKind::InvalidConfig:
      return ErrorClass::Validation;
    case ErrorKind::Io:
      return ErrorClass::Io;
    default:
      return ErrorClass::Solver;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

}  // namespace openqfi
