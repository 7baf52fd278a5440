#include "georeg/error.h"

namespace georeg {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kDegenerateVector: return "degenerate-vector";
    case ErrorCode::kSingularMatrix: return "singular-matrix";
    case ErrorCode::kDegenerateVariable: return "degenerate-variable";
    case ErrorCode::kCollinearity: return "collinearity";
    case ErrorCode::kInsufficientData: return "insufficient-data";
    case ErrorCode::kInvalidCorrelation: return "invalid-correlation-structure";
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kMissingNorms: return "missing-norms";
    case ErrorCode::kMissingData: return "missing-data";
    case ErrorCode::kNoExplanatory: return "no-explanatory-variables";
    case ErrorCode::kEmptySubset: return "empty-subset";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace georeg
