#pragma once

#include <stdexcept>
#include <string>

namespace gslab {

enum class Errc {
  // parameter validation
  NonFiniteInput,
  DimensionInvalid,
  NonpositiveGamma,
  AlphaOutOfRange,
  ExponentOutOfRange,
  Omega0Unknown,
  OmegaBelowThreshold,
  // shooting
  StartRadiusTooLarge,
  StepUnderflow,
  NonFiniteState,
  InvalidBracket,
  BracketNotFound,
  NoConvergence,
  // coefficients and profiles
  DerivativeUnavailable,
  OutOfRange,
  // spectrum
  GridTooCoarse,
  SingularityUnresolved,
  ConvergenceFailure,
  NoNegativeEigenvalue,
  InvalidArgument,
  // stability
  QuadratureFailure,
  // persistence and configuration
  SchemaMismatch,
  InvariantViolation,
  ConfigInvalid,
  IoFailure,
};

const char* to_string(Errc code) noexcept;

// Errors caused by bad input rather than by a failed computation.
bool is_validation_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gslab
