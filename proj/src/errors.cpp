#include "expclose/errors.hpp"

namespace expclose {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Arity: return "arity";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Config: return "config";
    case ErrorKind::DegreeZero: return "degree_zero";
    case ErrorKind::NotDivisible: return "not_divisible";
    case ErrorKind::TermLimit: return "term_limit";
    case ErrorKind::NoConvergence: return "no_convergence";
    case ErrorKind::CoordinateHyperplane: return "coordinate_hyperplane";
    case ErrorKind::NoSample: return "no_sample";
    case ErrorKind::RankUnstable: return "rank_unstable";
    case ErrorKind::DimensionHypothesis: return "dimension_hypothesis";
    case ErrorKind::DominanceHypothesis: return "dominance_hypothesis";
    case ErrorKind::EliminationCollapsed: return "elimination_collapsed";
    case ErrorKind::AllFactorsExtraneous: return "all_factors_extraneous";
    case ErrorKind::LogSingularity: return "log_singularity";
    case ErrorKind::NumericRange: return "numeric_range";
    case ErrorKind::BranchCollision: return "branch_collision";
    case ErrorKind::SingularLeadingCoefficient: return "singular_leading_coefficient";
    case ErrorKind::ExtraneousComponent: return "extraneous_component";
    case ErrorKind::InvalidSeed: return "invalid_seed";
    case ErrorKind::PrecisionTooLow: return "precision_too_low";
    case ErrorKind::ZeroMatrix: return "zero_matrix";
    case ErrorKind::EmptyPlan: return "empty_plan";
  }
  return "unknown";
}

}  // namespace expclose
