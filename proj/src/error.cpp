#include "efh/error.hpp"

namespace efh {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kFieldMismatch: return "field-mismatch";
    case ErrorCode::kNotPrime: return "not-prime";
    case ErrorCode::kNotAGroup: return "not-a-group";
    case ErrorCode::kNotASubgroup: return "not-a-subgroup";
    case ErrorCode::kLimitExceeded: return "limit-exceeded";
    case ErrorCode::kNotAChainComplex: return "not-a-chain-complex";
    case ErrorCode::kNotAnAction: return "not-an-action";
    case ErrorCode::kCharacteristicDividesOrder: return "characteristic-divides-order";
    case ErrorCode::kNotAnAlgebra: return "not-an-algebra";
    case ErrorCode::kNotATwist: return "not-a-twist";
    case ErrorCode::kTwistKindMismatch: return "twist-kind-mismatch";
    case ErrorCode::kNotAModule: return "not-a-module";
    case ErrorCode::kAlgebraMismatch: return "algebra-mismatch";
    case ErrorCode::kNotAFunctor: return "not-a-functor";
    case ErrorCode::kIsotropyNotCovered: return "isotropy-not-covered";
    case ErrorCode::kInvalidComplex: return "invalid-complex";
    case ErrorCode::kDecompositionInvalid: return "decomposition-invalid";
    case ErrorCode::kOrientationReversal: return "orientation-reversal-detected";
    case ErrorCode::kMissingCoefficient: return "missing-coefficient";
    case ErrorCode::kUnsupportedAction: return "unsupported-action";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace efh
