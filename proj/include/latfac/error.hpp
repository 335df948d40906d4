#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace latfac {

enum class ErrorKind {
  BadParams,
  NotAPoset,
  NotALattice,
  NoBoundedness,
  SizeLimitExceeded,
  RefinementViolation,
  NotATransferSystem,
  EnumerationLimitExceeded,
  CarrierMismatch,
  NotModular,
  NotACoverSubset,
  NotSaturated,
  NoMatchingSystem,
  NotARelation,
  NotComparable,
  NonUniqueFactorization,
  MinNotUnique,
  MaxNotUnique,
  NotMonotone,
  EmptyFiber,
  NotASubmonoid,
  NotIdempotent,
  NotReflective,
  NotCoreflective,
  BadIndex,
  CountMismatch,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::NotAPoset: return "NotAPoset";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NoBoundedness: return "NoBoundedness";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::RefinementViolation: return "RefinementViolation";
    case ErrorKind::NotATransferSystem: return "NotATransferSystem";
    case ErrorKind::EnumerationLimitExceeded: return "EnumerationLimitExceeded";
    case ErrorKind::CarrierMismatch: return "CarrierMismatch";
    case ErrorKind::NotModular: return "NotModular";
    case ErrorKind::NotACoverSubset: return "NotACoverSubset";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::NoMatchingSystem: return "NoMatchingSystem";
    case ErrorKind::NotARelation: return "NotARelation";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::NonUniqueFactorization: return "NonUniqueFactorization";
    case ErrorKind::MinNotUnique: return "MinNotUnique";
    case ErrorKind::MaxNotUnique: return "MaxNotUnique";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::EmptyFiber: return "EmptyFiber";
    case ErrorKind::NotASubmonoid: return "NotASubmonoid";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::NotReflective: return "NotReflective";
    case ErrorKind::NotCoreflective: return "NotCoreflective";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every domain failure in the library is reported through this type; `kind()`
/// is stable and machine-readable, `what()` carries the human detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace latfac
