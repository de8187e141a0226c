#ifndef MATHREPRO_ERROR_HPP
#define MATHREPRO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mathrepro {

enum class ErrorKind {
  InvalidInput,
  NotPrime,
  DuplicateVariable,
  InvalidIdentifier,
  ParentMismatch,
  DivisionByZero,
  UnregisteredType,
  UnknownNamespace,
  UnknownType,
  MalformedPayload,
  VersionTooNew,
  MissingUpgradePath,
  UnresolvableDependency,
  IoError,
  ParseError,
  UndefinedVariable,
  UnknownFunction,
  UnterminatedBlock,
  MissingLabel,
  StaleReport,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ErrorKind::InvalidIdentifier: return "InvalidIdentifier";
    case ErrorKind::ParentMismatch: return "ParentMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::UnregisteredType: return "UnregisteredType";
    case ErrorKind::UnknownNamespace: return "UnknownNamespace";
    case ErrorKind::UnknownType: return "UnknownType";
    case ErrorKind::MalformedPayload: return "MalformedPayload";
    case ErrorKind::VersionTooNew: return "VersionTooNew";
    case ErrorKind::MissingUpgradePath: return "MissingUpgradePath";
    case ErrorKind::UnresolvableDependency: return "UnresolvableDependency";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UndefinedVariable: return "UndefinedVariable";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::UnterminatedBlock: return "UnterminatedBlock";
    case ErrorKind::MissingLabel: return "MissingLabel";
    case ErrorKind::StaleReport: return "StaleReport";
  }
  return "Error";
}

/// Single exception type for the whole toolkit; `kind()` is the stable,
/// machine-checkable part, the message is for humans (and doctest output).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mathrepro

#endif
