#include "drlab/error.hpp"

namespace drlab {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotFirmlyNonexpansive: return "NotFirmlyNonexpansive";
    case Errc::NotMaximallyMonotone: return "NotMaximallyMonotone";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::NotInD: return "NotInD";
    case Errc::EscapeFailed: return "EscapeFailed";
    case Errc::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

}  // namespace drlab
