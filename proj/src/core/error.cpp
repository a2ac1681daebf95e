#include "isoslope/error.hpp"

namespace isoslope {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::InvalidDatum: return "InvalidDatum";
    case ErrorKind::StrategyUnavailable: return "StrategyUnavailable";
    case ErrorKind::RankTooLargeForP: return "RankTooLargeForP";
    case ErrorKind::DatumMismatch: return "DatumMismatch";
    case ErrorKind::NotInCorootSpan: return "NotInCorootSpan";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::UnsupportedDatum: return "UnsupportedDatum";
    case ErrorKind::NonConvexInput: return "NonConvexInput";
    case ErrorKind::InvalidC3: return "InvalidC3";
    case ErrorKind::PrimeTooSmall: return "PrimeTooSmall";
    case ErrorKind::Interrupted: return "Interrupted";
  }
  return "Unknown";
}

}  // namespace isoslope
