#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sheafkit {

enum class ErrorCode {
  // categories and functors
  MissingIdentity,
  MissingComposite,
  NonAssociative,
  BadDomCod,
  UnknownObject,
  UnknownMorphism,
  DuplicateId,
  NotAFunctor,
  ShapeMismatch,
  NaturalityViolation,
  // finite sets
  NotParallel,
  AmbientMismatch,
  NotAMap,
  // limits
  NoLimit,
  // quotients
  NotAPartition,
  NotCategorical,
  NotStronglyIso,
  CochainConditionViolated,
  GeneratorNotIso,
  // topology algebras
  NotAPoset,
  MissingJoin,
  MissingMeet,
  AxiomViolation,
  NotATopology,
  NotAnElement,
  HomInvalid,
  // sheaves
  NotAPresheaf,
  Incompatible,
  NotAParticle,
  IncompatiblePartition,
  // spaces
  NotApex,
  NotCosheaf,
  NotContinuous,
  NotSeparatable,
  // io
  ParseError,
  UnknownCommand,
};

std::string_view to_string(ErrorCode code);

struct Violation {
  ErrorCode code;
  std::string detail;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Carries every violation found by an exhaustive validation pass.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace sheafkit
