#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ftop {

/// Every diagnostic the library raises. The name of each enumerator is what the
/// CLI prints after `kind=`.
enum class ErrorKind {
  InvalidDegree,
  UnknownElement,
  DuplicateName,
  NotAPoset,
  NotALattice,
  NotDistributive,
  NotMeetPreserving,
  NotJoinPreserving,
  BoundsNotPreserved,
  TooLargeToEnumerate,
  NotTotal,
  ConditionViolated,
  SourceTargetMismatch,
  SizeBoundExceeded,
  ShapeMismatch,
  ConditionIViolated,
  ConditionIIViolated,
  ConditionIIIViolated,
  NotATopologicalSystem,
  NotFrameHom,
  StreamTooShort,
  InvalidPrefix,
  SyntaxError,
  UnknownReference,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDegree: return "InvalidDegree";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::NotAPoset: return "NotAPoset";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NotDistributive: return "NotDistributive";
    case ErrorKind::NotMeetPreserving: return "NotMeetPreserving";
    case ErrorKind::NotJoinPreserving: return "NotJoinPreserving";
    case ErrorKind::BoundsNotPreserved: return "BoundsNotPreserved";
    case ErrorKind::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorKind::NotTotal: return "NotTotal";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::SourceTargetMismatch: return "SourceTargetMismatch";
    case ErrorKind::SizeBoundExceeded: return "SizeBoundExceeded";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ConditionIViolated: return "ConditionIViolated";
    case ErrorKind::ConditionIIViolated: return "ConditionIIViolated";
    case ErrorKind::ConditionIIIViolated: return "ConditionIIIViolated";
    case ErrorKind::NotATopologicalSystem: return "NotATopologicalSystem";
    case ErrorKind::NotFrameHom: return "NotFrameHom";
    case ErrorKind::StreamTooShort: return "StreamTooShort";
    case ErrorKind::InvalidPrefix: return "InvalidPrefix";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownReference: return "UnknownReference";
  }
  return "Unknown";
}

/// Exception carrying a diagnostic kind and a `key=value ...` witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string witness)
      : std::runtime_error(std::string(to_string(kind)) + ": " + witness),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace ftop
