#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace expclose {

enum class ErrorKind {
  Arity,
  Parse,
  Config,
  DegreeZero,
  NotDivisible,
  TermLimit,
  NoConvergence,
  CoordinateHyperplane,
  NoSample,
  RankUnstable,
  DimensionHypothesis,
  DominanceHypothesis,
  EliminationCollapsed,
  AllFactorsExtraneous,
  LogSingularity,
  NumericRange,
  BranchCollision,
  SingularLeadingCoefficient,
  ExtraneousComponent,
  InvalidSeed,
  PrecisionTooLow,
  ZeroMatrix,
  EmptyPlan,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `stage` names the pipeline stage
/// ("sample", "triangularize", "masser", ...) when one applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string stage = {})
      : std::runtime_error(message), kind_(kind), stage_(std::move(stage)) {}

  [[nodiscard]] ErrorKind kind() const { return kind_; }
  [[nodiscard]] const std::string& stage() const { return stage_; }

  /// Same error, relabelled with an outer stage if none was set.
  [[nodiscard]] Error in_stage(std::string stage) const {
    return Error(kind_, what(), stage_.empty() ? std::move(stage) : stage_);
  }

 private:
  ErrorKind kind_;
  std::string stage_;
};

}  // namespace expclose
