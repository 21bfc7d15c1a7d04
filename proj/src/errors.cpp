#include "witten/errors.hpp"

namespace witten {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DegenerateCritical: return "DegenerateCritical";
    case ErrorCode::NoCriticalPoints: return "NoCriticalPoints";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::NegativeDegree: return "NegativeDegree";
    case ErrorCode::NonPositiveBarrier: return "NonPositiveBarrier";
    case ErrorCode::ZeroSlope: return "ZeroSlope";
    case ErrorCode::GammaPole: return "GammaPole";
    case ErrorCode::ContourTooClose: return "ContourTooClose";
    case ErrorCode::ConstantTermSurvives: return "ConstantTermSurvives";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::NoProgress: return "NoProgress";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NonPositiveEigenvalue: return "NonPositiveEigenvalue";
    case ErrorCode::CountMismatch: return "CountMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string stage, const std::string& message)
    : std::runtime_error(stage + ": " + to_string(code) + ": " + message),
      code_(code),
      stage_(std::move(stage)) {}

}  // namespace witten
