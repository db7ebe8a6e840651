#pragma once

#include <stdexcept>
#include <string>

namespace cantorqc {

enum class ErrorKind {
  IndexBeyondHorizon,
  ValueOutOfRange,
  DepthOverflow,
  IndexOutOfRange,
  DeltaViolation,
  InvalidDilatation,
  ConvergenceFailure,
  NotApplicable,
  HorizonError,
  AlphaOutOfRange,
  IndexBeyondTruncation,
  ParseError,
  ValidationError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IndexBeyondHorizon:    return "IndexBeyondHorizon";
    case ErrorKind::ValueOutOfRange:       return "ValueOutOfRange";
    case ErrorKind::DepthOverflow:         return "DepthOverflow";
    case ErrorKind::IndexOutOfRange:       return "IndexOutOfRange";
    case ErrorKind::DeltaViolation:        return "DeltaViolation";
    case ErrorKind::InvalidDilatation:     return "InvalidDilatation";
    case ErrorKind::ConvergenceFailure:    return "ConvergenceFailure";
    case ErrorKind::NotApplicable:         return "NotApplicable";
    case ErrorKind::HorizonError:          return "HorizonError";
    case ErrorKind::AlphaOutOfRange:       return "AlphaOutOfRange";
    case ErrorKind::IndexBeyondTruncation: return "IndexBeyondTruncation";
    case ErrorKind::ParseError:            return "ParseError";
    case ErrorKind::ValidationError:       return "ValidationError";
  }
  return "Unknown";
}

/// Library error carrying a machine-readable kind alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace cantorqc
