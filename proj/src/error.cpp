#include "sheafkit/error.hpp"

namespace sheafkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingIdentity: return "MissingIdentity";
    case ErrorCode::MissingComposite: return "MissingComposite";
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::BadDomCod: return "BadDomCod";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::UnknownMorphism: return "UnknownMorphism";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NotAFunctor: return "NotAFunctor";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NaturalityViolation: return "NaturalityViolation";
    case ErrorCode::NotParallel: return "NotParallel";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotAMap: return "NotAMap";
    case ErrorCode::NoLimit: return "NoLimit";
    case ErrorCode::NotAPartition: return "NotAPartition";
    case ErrorCode::NotCategorical: return "NotCategorical";
    case ErrorCode::NotStronglyIso: return "NotStronglyIso";
    case ErrorCode::CochainConditionViolated: return "CochainConditionViolated";
    case ErrorCode::GeneratorNotIso: return "GeneratorNotIso";
    case ErrorCode::NotAPoset: return "NotAPoset";
    case ErrorCode::MissingJoin: return "MissingJoin";
    case ErrorCode::MissingMeet: return "MissingMeet";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
    case ErrorCode::NotATopology: return "NotATopology";
    case ErrorCode::NotAnElement: return "NotAnElement";
    case ErrorCode::HomInvalid: return "HomInvalid";
    case ErrorCode::NotAPresheaf: return "NotAPresheaf";
    case ErrorCode::Incompatible: return "Incompatible";
    case ErrorCode::NotAParticle: return "NotAParticle";
    case ErrorCode::IncompatiblePartition: return "IncompatiblePartition";
    case ErrorCode::NotApex: return "NotApex";
    case ErrorCode::NotCosheaf: return "NotCosheaf";
    case ErrorCode::NotContinuous: return "NotContinuous";
    case ErrorCode::NotSeparatable: return "NotSeparatable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& detail) {
  std::string out(to_string(code));
  if (!detail.empty()) {
    out += ": ";
    out += detail;
  }
  return out;
}

std::string summarize(const std::vector<Violation>& violations) {
  std::string out = std::to_string(violations.size()) + " violation(s)";
  for (const auto& v : violations) {
    out += "; ";
    out += format_message(v.code, v.detail);
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(format_message(code, detail)), code_(code) {}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(violations.empty() ? ErrorCode::AxiomViolation : violations.front().code,
            summarize(violations)),
      violations_(std::move(violations)) {}

}  // namespace sheafkit
