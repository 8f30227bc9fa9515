#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jetmetric {

// Every failure mode the toolkit reports. The names are part of the JSON
// output of the command-line tool, so they are stable identifiers.
enum class ErrorKind {
  Syntax,
  Field,
  FieldMismatch,
  Grading,
  NonHomogeneous,
  ConstantTerm,
  Range,
  Capacity,
  ZeroRing,
  NotPrimary,
  NilpotencyOne,
  DimensionZero,
  PoleOrderZero,
  PrefixTooShort,
  WindowTooSmall,
  NotStabilized,
  UnknownStabilization,
  TupleLengthMismatch,
  Inconsistency,
  Usage,
};

inline std::string_view error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Field: return "FieldError";
    case ErrorKind::FieldMismatch: return "FieldMismatchError";
    case ErrorKind::Grading: return "GradingError";
    case ErrorKind::NonHomogeneous: return "NonHomogeneousError";
    case ErrorKind::ConstantTerm: return "ConstantTermError";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::Capacity: return "CapacityError";
    case ErrorKind::ZeroRing: return "ZeroRingError";
    case ErrorKind::NotPrimary: return "NotPrimaryError";
    case ErrorKind::NilpotencyOne: return "NilpotencyOneError";
    case ErrorKind::DimensionZero: return "DimensionZeroError";
    case ErrorKind::PoleOrderZero: return "PoleOrderZero";
    case ErrorKind::PrefixTooShort: return "PrefixTooShortError";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::NotStabilized: return "NotStabilizedError";
    case ErrorKind::UnknownStabilization: return "UnknownStabilization";
    case ErrorKind::TupleLengthMismatch: return "TupleLengthMismatch";
    case ErrorKind::Inconsistency: return "InternalInconsistencyError";
    case ErrorKind::Usage: return "UsageError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_name(kind)) + ": " + message),
        kind_(kind),
        message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace jetmetric
