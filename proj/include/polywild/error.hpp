#pragma once

#include <stdexcept>
#include <string>

namespace polywild {

enum class ErrorCode {
  UnsupportedDomain,
  ZeroInput,
  DivisionByZero,
  NotDivisible,
  RingMismatch,
  ArityMismatch,
  DegenerateInput,
  SyntaxError,
  NotTriangular,
  NotExact,
  NotAffine,
  NotNilpotentLinearPart,
  NotInKernel,
  NotUnipotent,
  NotAutomorphism,
  InvalidEvidence,
  MissingInverse,
  MissingProvenance,
  NonUnit,
  ConstantInput,
  HypothesisNotMet,
  PreconditionFailed,
  RankDeficient,
  UncertifiedP,
  CommonFactor,
  DepthBeyondI,
  ExceededCap,
  ConsistencyFailure,  // a verified-construction identity failed; must never happen
  InternalError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace polywild
