#pragma once

#include <stdexcept>
#include <string>

namespace contactqm {

enum class ErrorCode {
  InvalidArgument,
  // numerics
  NoSignChange,
  MaxIterExceeded,
  DomainViolation,
  NonConvergent,
  StepUnderflow,
  DegenerateFit,
  // specfun
  PoleAtNonPositiveInteger,
  RangeExceeded,
  PoleInCoefficients,
  // coulomb
  DivergentZ,
  ZeroC0,
  NonPositiveNu,
  PoleInF,
  PositiveKappa,
  // invsquare
  GRangeError,
  PerturbativityViolated,
  // freeparticle
  CoefficientPole,
  NoCandidate,
  // timedelay
  NoResonance,
  // consistency
  RootScanExhausted,
  DegenerateEnergies,
};

const char* to_string(ErrorCode code) noexcept;

// All numerical failures in the library are reported with this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace contactqm
