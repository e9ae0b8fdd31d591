#include "basecat/error.hpp"

namespace basecat {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::UnknownMorphism: return "UnknownMorphism";
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::ConflictingComposite: return "ConflictingComposite";
    case ErrorKind::UnitLawViolation: return "UnitLawViolation";
    case ErrorKind::AssociativityViolation: return "AssociativityViolation";
    case ErrorKind::DomCodMismatch: return "DomCodMismatch";
    case ErrorKind::IdentityNotPreserved: return "IdentityNotPreserved";
    case ErrorKind::CompositionNotPreserved: return "CompositionNotPreserved";
    case ErrorKind::DomCodNotPreserved: return "DomCodNotPreserved";
    case ErrorKind::UnmappedObject: return "UnmappedObject";
    case ErrorKind::UnmappedMorphism: return "UnmappedMorphism";
    case ErrorKind::SourceTargetMismatch: return "SourceTargetMismatch";
    case ErrorKind::NotFunctorial: return "NotFunctorial";
    case ErrorKind::NotFaithful: return "NotFaithful";
    case ErrorKind::PartialFunction: return "PartialFunction";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::CodomainMismatch: return "CodomainMismatch";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::NotStrict: return "NotStrict";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::NotCartesian: return "NotCartesian";
    case ErrorKind::NoLiftInCleavage: return "NoLiftInCleavage";
    case ErrorKind::NoSelfDualWitness: return "NoSelfDualWitness";
    case ErrorKind::UnresolvedReference: return "UnresolvedReference";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
  }
  return "Unknown";
}

namespace {

std::string render(ErrorKind kind, const std::vector<std::string>& witnesses) {
  std::string out(to_string(kind));
  out += '(';
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (i) out += ',';
    out += witnesses[i];
  }
  out += ')';
  return out;
}

}  // namespace

ValidationError::ValidationError(ErrorKind kind, std::vector<std::string> witnesses, std::string detail)
    : std::runtime_error(render(kind, witnesses) + (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      witnesses_(std::move(witnesses)),
      detail_(std::move(detail)) {}

std::string ValidationError::tag() const { return render(kind_, witnesses_); }

}  // namespace basecat
