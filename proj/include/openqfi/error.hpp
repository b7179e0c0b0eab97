#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace openqfi {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  BadDimension,
  DimensionMismatch,
  InvalidParams,
  NegativeRate,
  InvalidState,
  NotNormalized,
  DegenerateDenominator,
  DegenerateSteadyState,
  NotConverged,
  NoBracket,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Broad grouping used for CLI exit codes.
enum class ErrorClass { Validation, Solver, Io };

ErrorClass classify(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// %.6g formatting for error messages.
std::string format_number(double value);

}  // namespace openqfi
