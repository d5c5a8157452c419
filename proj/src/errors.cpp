#include "hyperdet/errors.hpp"

namespace hyperdet {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::TransversalityFailure: return "TransversalityFailure";
    case ErrorKind::PairingFailure: return "PairingFailure";
    case ErrorKind::DimensionError: return "DimensionError";
    case ErrorKind::NotInSpan: return "NotInSpan";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::LargeResidual: return "LargeResidual";
    case ErrorKind::NonPositiveScale: return "NonPositiveScale";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::IndefiniteOutput: return "IndefiniteOutput";
    case ErrorKind::IllConditionedFit: return "IllConditionedFit";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Error";
}

}  // namespace hyperdet
