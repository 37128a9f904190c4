#include "adlv/error.hpp"

namespace adlv {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MissingCoset: return "MissingCoset";
    case ErrorKind::FStabilityViolation: return "FStabilityViolation";
    case ErrorKind::NonMinusculePhi: return "NonMinusculePhi";
    case ErrorKind::InfeasibleHodgeType: return "InfeasibleHodgeType";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::KottwitzMismatch: return "KottwitzMismatch";
    case ErrorKind::CyclicPrecedence: return "CyclicPrecedence";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::NotInVariety: return "NotInVariety";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace adlv
