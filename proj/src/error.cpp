#include "gslab/error.hpp"

namespace gslab {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::DimensionInvalid: return "DimensionInvalid";
    case Errc::NonpositiveGamma: return "NonpositiveGamma";
    case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
    case Errc::ExponentOutOfRange: return "ExponentOutOfRange";
    case Errc::Omega0Unknown: return "Omega0Unknown";
    case Errc::OmegaBelowThreshold: return "OmegaBelowThreshold";
    case Errc::StartRadiusTooLarge: return "StartRadiusTooLarge";
    case Errc::StepUnderflow: return "StepUnderflow";
    case Errc::NonFiniteState: return "NonFiniteState";
    case Errc::InvalidBracket: return "InvalidBracket";
    case Errc::BracketNotFound: return "BracketNotFound";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::DerivativeUnavailable: return "DerivativeUnavailable";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::SingularityUnresolved: return "SingularityUnresolved";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::NoNegativeEigenvalue: return "NoNegativeEigenvalue";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

bool is_validation_error(Errc code) noexcept {
  switch (code) {
    case Errc::NonFiniteInput:
    case Errc::DimensionInvalid:
    case Errc::NonpositiveGamma:
    case Errc::AlphaOutOfRange:
    case Errc::ExponentOutOfRange:
    case Errc::OmegaBelowThreshold:
    case Errc::InvalidArgument:
    case Errc::SchemaMismatch:
    case Errc::InvariantViolation:
    case Errc::ConfigInvalid:
    case Errc::GridTooCoarse:
    case Errc::InvalidBracket:
      return true;
    default:
      return false;
  }
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace gslab
