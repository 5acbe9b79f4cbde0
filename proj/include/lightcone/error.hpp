#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lightcone {

enum class ErrorCode {
  NonFiniteComponent,
  NonPositiveDenominator,
  ModulusOutOfRange,
  CharacteristicPole,
  ValidityRegionViolated,
  DegenerateRoots,
  NonPositiveMu,
  OutsideSeriesRange,
  NotCoprime,
  RatioOutOfRange,
  BracketFailure,
  RegimeViolation,
  CaseMismatch,
  IntegrationFailure,
  NotClosed,
  ConstraintViolated,
  Blowup,
  StabilityViolation,
  NonPositiveCurvature,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every domain failure in the library is reported through this type; callers
// dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Terminal state of the heat flow: the reaction term blows up in finite time.
class BlowupError : public Error {
 public:
  BlowupError(double time, const std::string& what)
      : Error(ErrorCode::Blowup, what), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace lightcone
