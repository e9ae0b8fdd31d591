#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace basecat {

/// Every way a presentation, functor, structure or construction input can be
/// rejected. The enumerator name is the user-visible error tag.
enum class ErrorKind {
  DuplicateId,
  UnknownObject,
  UnknownMorphism,
  MissingComposite,
  ConflictingComposite,
  UnitLawViolation,
  AssociativityViolation,
  DomCodMismatch,
  IdentityNotPreserved,
  CompositionNotPreserved,
  DomCodNotPreserved,
  UnmappedObject,
  UnmappedMorphism,
  SourceTargetMismatch,
  NotFunctorial,
  NotFaithful,
  PartialFunction,
  UnknownElement,
  CodomainMismatch,
  NotAGroup,
  NotStrict,
  NotSplit,
  NotCartesian,
  NoLiftInCleavage,
  NoSelfDualWitness,
  UnresolvedReference,
  BudgetExhausted,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Raised when an input violates a law. `witnesses` names the offending ids in
/// the order the error tag documents, e.g. AssociativityViolation(h, g, f).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(ErrorKind kind, std::vector<std::string> witnesses, std::string detail = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }
  const std::string& detail() const noexcept { return detail_; }

  /// `Kind(w1,w2,...)` without the free-form detail.
  std::string tag() const;

 private:
  ErrorKind kind_;
  std::vector<std::string> witnesses_;
  std::string detail_;
};

}  // namespace basecat
