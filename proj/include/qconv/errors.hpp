#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qconv {

enum class ErrorCode {
  NotPrime,
  ZeroElement,
  NoSolution,
  NotInvertible,
  NotPositive,
  NotHermitian,
  NotUnitary,
  DomainError,
  DimensionMismatch,
  InvalidState,
  InvalidGroup,
  UnsupportedScale,
  UnsupportedDimension,
  PhaseNotRoot,
  RankDeficient,
  CovarianceViolation,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qconv
