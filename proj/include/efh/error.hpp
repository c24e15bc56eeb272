#pragma once

#include <stdexcept>
#include <string>

namespace efh {

/// Mathematical precondition failures. Each value names one documented
/// failure mode of the engine.
enum class ErrorCode {
  kDimensionMismatch,
  kFieldMismatch,
  kNotPrime,
  kNotAGroup,
  kNotASubgroup,
  kLimitExceeded,
  kNotAChainComplex,
  kNotAnAction,
  kCharacteristicDividesOrder,
  kNotAnAlgebra,
  kNotATwist,
  kTwistKindMismatch,
  kNotAModule,
  kAlgebraMismatch,
  kNotAFunctor,
  kIsotropyNotCovered,
  kInvalidComplex,
  kDecompositionInvalid,
  kOrientationReversal,
  kMissingCoefficient,
  kUnsupportedAction,
  kInvalidArgument,
};

const char* to_string(ErrorCode code);

class MathError : public std::runtime_error {
public:
  MathError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace efh
