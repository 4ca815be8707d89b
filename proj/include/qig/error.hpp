#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qig {

enum class ErrorKind {
  InvalidState,
  InconsistentTomogram,
  InvalidTensor,
  DegenerateScheme,
  InvalidScheme,
  NonInvertibleScheme,
  DomainError,
  Singular,
  InvalidPetzFunction,
  InvalidMetric,
  RemovableSingularity,
  RangeEscape,
  BranchFailure,
  StepFailure,
  EndpointSingularity,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI's exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InconsistentTomogram: return "InconsistentTomogram";
    case ErrorKind::InvalidTensor: return "InvalidTensor";
    case ErrorKind::DegenerateScheme: return "DegenerateScheme";
    case ErrorKind::InvalidScheme: return "InvalidScheme";
    case ErrorKind::NonInvertibleScheme: return "NonInvertibleScheme";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::InvalidPetzFunction: return "InvalidPetzFunction";
    case ErrorKind::InvalidMetric: return "InvalidMetric";
    case ErrorKind::RemovableSingularity: return "RemovableSingularity";
    case ErrorKind::RangeEscape: return "RangeEscape";
    case ErrorKind::BranchFailure: return "BranchFailure";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::EndpointSingularity: return "EndpointSingularity";
  }
  return "Unknown";
}

}  // namespace qig
