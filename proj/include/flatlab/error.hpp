#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatlab {

enum class ErrorCode {
  NotPrime,
  LimitExceeded,
  OutOfRange,
  EmptySupport,
  NotNormalized,
  InvalidParam,
  GridTooSmall,
  DegenerateFamily,
  InvalidFactor,
  BudgetExceeded,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidParam: return "InvalidParam";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::DegenerateFamily: return "DegenerateFamily";
    case ErrorCode::InvalidFactor: return "InvalidFactor";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

}  // namespace flatlab
