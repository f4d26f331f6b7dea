#include "contactqm/error.hpp"

namespace contactqm {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::PoleAtNonPositiveInteger: return "PoleAtNonPositiveInteger";
    case ErrorCode::RangeExceeded: return "RangeExceeded";
    case ErrorCode::PoleInCoefficients: return "PoleInCoefficients";
    case ErrorCode::DivergentZ: return "DivergentZ";
    case ErrorCode::ZeroC0: return "ZeroC0";
    case ErrorCode::NonPositiveNu: return "NonPositiveNu";
    case ErrorCode::PoleInF: return "PoleInF";
    case ErrorCode::PositiveKappa: return "PositiveKappa";
    case ErrorCode::GRangeError: return "GRangeError";
    case ErrorCode::PerturbativityViolated: return "PerturbativityViolated";
    case ErrorCode::CoefficientPole: return "CoefficientPole";
    case ErrorCode::NoCandidate: return "NoCandidate";
    case ErrorCode::NoResonance: return "NoResonance";
    case ErrorCode::RootScanExhausted: return "RootScanExhausted";
    case ErrorCode::DegenerateEnergies: return "DegenerateEnergies";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace contactqm
