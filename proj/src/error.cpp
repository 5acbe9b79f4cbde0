#include "lightcone/error.hpp"

namespace lightcone {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteComponent: return "NonFiniteComponent";
    case ErrorCode::NonPositiveDenominator: return "NonPositiveDenominator";
    case ErrorCode::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorCode::CharacteristicPole: return "CharacteristicPole";
    case ErrorCode::ValidityRegionViolated: return "ValidityRegionViolated";
    case ErrorCode::DegenerateRoots: return "DegenerateRoots";
    case ErrorCode::NonPositiveMu: return "NonPositiveMu";
    case ErrorCode::OutsideSeriesRange: return "OutsideSeriesRange";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::RatioOutOfRange: return "RatioOutOfRange";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::RegimeViolation: return "RegimeViolation";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::Blowup: return "Blowup";
    case ErrorCode::StabilityViolation: return "StabilityViolation";
    case ErrorCode::NonPositiveCurvature: return "NonPositiveCurvature";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace lightcone
