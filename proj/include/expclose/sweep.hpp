// Seed sweeps with post-hoc torus exclusion, and monomial-rank evidence
// that the accepted solutions are not cut out by a low-degree polynomial.

#pragma once

#include "expclose/generic.hpp"
#include "expclose/masser.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace expclose {

/// Inclusive integer range with 0 removed.
struct SeedRange {
  long lo = 1;
  long hi = 1;
  friend bool operator==(const SeedRange&, const SeedRange&) = default;
};

enum class BranchPolicy { First, All };

struct SweepPlan {
  std::vector<SeedRange> seed_box;  ///< one range per coordinate
  BranchPolicy branch_policy = BranchPolicy::First;
  std::vector<Torus> excluded_tori;
  std::size_t budget = 200;  ///< max number of solves
  mpz_class height_bound = 100;
  std::optional<unsigned> density_degree;
  bool override_hypotheses = false;
  std::size_t threads = 1;

  /// Throws EmptyPlan for an empty box or a range holding only 0, Config
  /// for budget 0.
  void validate(std::size_t n) const;
};

/// Seeds of the box in lexicographic order (first coordinate slowest), 0 skipped.
std::vector<std::vector<long>> enumerate_seeds(const std::vector<SeedRange>& box);

struct RejectedSeed {
  Seed seed;
  std::string stage;
  std::string reason;
  std::optional<std::size_t> torus_index;  ///< into SweepResult::tori
  std::optional<SolutionPoint> solution;   ///< set when the solve converged
  std::optional<GenericityReport> audit;
  friend bool operator==(const RejectedSeed&, const RejectedSeed&) = default;
};

struct AcceptedSolution {
  SolutionPoint solution;
  GenericityReport audit;
  friend bool operator==(const AcceptedSolution&, const AcceptedSolution&) = default;
};

enum class DensitySpace { Graph, Base };

struct DensityEvidence {
  std::size_t solutions = 0;
  unsigned degree = 0;
  DensitySpace space = DensitySpace::Graph;
  std::size_t monomial_count = 0;
  std::size_t monomial_rank = 0;
  bool full = false;
  bool inconclusive = false;
  std::string reason;
  friend bool operator==(const DensityEvidence&, const DensityEvidence&) = default;
};

enum class SweepOutcome { Ok, NoGenericSolution };

struct SweepResult {
  std::vector<AcceptedSolution> solutions;
  std::vector<RejectedSeed> rejected;
  std::vector<Torus> tori;  ///< excluded tori: those of the plan, then those witnessed
  std::optional<HypothesisReport> hypotheses;
  bool hypotheses_overridden = false;
  std::size_t seeds_tried = 0;
  SweepOutcome outcome = SweepOutcome::Ok;
  std::optional<DensityEvidence> density;
  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// Options shared with single solves: precision, max_iter, tol, sampling seed.
struct SweepContext {
  VarietySolveOptions solve;
};

SweepResult sweep(const ExpVariety& v, const SweepPlan& plan, const SweepContext& context);
SweepResult sweep(const TriangularSystem& t, const SweepPlan& plan, const SweepContext& context);

/// Monomials of total degree <= d in (z, y) (Graph) or in z alone (Base),
/// evaluated at each solution; rank with column scaling at the 2^{-p/4}
/// cut-off. Fewer solutions than monomials is inconclusive.
DensityEvidence density_evidence(const std::vector<SolutionPoint>& solutions, unsigned degree,
                                 DensitySpace space = DensitySpace::Graph);

/// Exponent vectors of total degree <= d in `vars` variables, graded then lexicographic.
std::vector<std::vector<unsigned>> monomials_up_to(std::size_t vars, unsigned degree);

}  // namespace expclose
