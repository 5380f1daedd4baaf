#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gdam {

enum class ErrorCode {
  kBoundaryViolation,
  kDegenerateObjectiveGradient,
  kDegenerateGeometry,
  kRankDeficient,
  kNotPositiveDefinite,
  kZeroDirection,
  kInfeasibleStart,
  kUnknownProblemId,
  kParseError,
  kDimensionMismatch,
  kDomainError,
  kIndexMismatch,
  kPhase1Failure,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Error raised by library operations. `index()` carries the offending
/// constraint index, pivot, or input line when the failure has one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<long> index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        index_(index) {}

  ErrorCode code() const { return code_; }
  std::optional<long> index() const { return index_; }

 private:
  ErrorCode code_;
  std::optional<long> index_;
};

}  // namespace gdam
