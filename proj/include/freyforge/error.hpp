#pragma once

#include <stdexcept>
#include <string>

namespace freyforge {

enum class ErrorCode {
  InvalidArgument,
  NotSquarefree,
  FieldMismatch,
  NotPrime,
  ResourceLimit,
  DegenerateSolution,
  DegenerateCurve,
  ConstructionUndefined,
  NotApplicable,
  ExponentTooSmall,
  NotPrimitive,
  NotNormalized,
  NotASolution,
  WrongPrime,
};

const char* to_string(ErrorCode code);

// Every library failure is reported through this type; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace freyforge
