#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ncad {

/// Failure categories shared by the whole library.
///
/// The first group are contract violations on inputs (bad shapes, bad
/// indices); the second group are mathematical negatives (the requested
/// object provably does not exist, with a witness in the detail text);
/// the last group covers serialization and command-line usage.
enum class ErrorKind {
  IndexOutOfRange,
  ShapeMismatch,
  DimMismatch,
  OrderMismatch,
  SlotOutOfRange,
  ComponentOutOfRange,
  SizeNotMultiple,
  NotInner,
  NotIntegrable,
  NotIntegrablePoly,
  PostconditionFailure,
  PreconditionFailure,
  ParseError,
  SchemaError,
  UsageError,
};

constexpr const char* error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::SlotOutOfRange: return "SlotOutOfRange";
    case ErrorKind::ComponentOutOfRange: return "ComponentOutOfRange";
    case ErrorKind::SizeNotMultiple: return "SizeNotMultiple";
    case ErrorKind::NotInner: return "NotInner";
    case ErrorKind::NotIntegrable: return "NotIntegrable";
    case ErrorKind::NotIntegrablePoly: return "NotIntegrablePoly";
    case ErrorKind::PostconditionFailure: return "PostconditionFailure";
    case ErrorKind::PreconditionFailure: return "PreconditionFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "UnknownError";
}

/// Mathematical negatives map to CLI exit code 1, everything else to 2.
constexpr bool is_math_failure(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotInner:
    case ErrorKind::NotIntegrable:
    case ErrorKind::NotIntegrablePoly:
    case ErrorKind::PostconditionFailure:
    case ErrorKind::PreconditionFailure:
      return true;
    default:
      return false;
  }
}

class NcadError : public std::runtime_error {
 public:
  NcadError(ErrorKind kind, std::string detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
        kind_(kind),
        detail_(std::move(detail)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string detail) {
  throw NcadError(kind, std::move(detail));
}

/// Outcome of a property verification. `detail` holds the first witness of a
/// violation when `ok` is false, or qualifying notes (e.g. sampled coverage)
/// when `ok` is true. `checked` counts the individual equalities tested.
struct CheckReport {
  bool ok = true;
  std::size_t checked = 0;
  std::string detail;
};

}  // namespace ncad
