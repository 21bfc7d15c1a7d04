#pragma once

#include <stdexcept>
#include <string>

namespace witten {

enum class ErrorCode {
  InvalidInput,
  DegenerateCritical,
  NoCriticalPoints,
  NotAlternating,
  EmptySeries,
  NegativeDegree,
  NonPositiveBarrier,
  ZeroSlope,
  GammaPole,
  ContourTooClose,
  ConstantTermSurvives,
  DegenerateEdge,
  NoProgress,
  GridTooCoarse,
  ConvergenceFailure,
  NonPositiveEigenvalue,
  CountMismatch,
};

const char* to_string(ErrorCode code);

/// Structured failure carrying the pipeline stage that raised it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string stage, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  ErrorCode code_;
  std::string stage_;
};

}  // namespace witten
