// Systems e^{z_i} = f_i(z) with polynomial or algebraic right-hand sides,
// solved by damped fixed-point iteration z <- 2 pi i k + Log f(z) from
// z0 = 2 pi i k followed by damped Newton on G(z) = z - Log f(z) - 2 pi i k.

#pragma once

#include "expclose/multipoly.hpp"
#include "expclose/triangularize.hpp"
#include "expclose/variety.hpp"

#include <optional>
#include <string>
#include <vector>

namespace expclose {

struct Seed {
  std::vector<long> k;              ///< nonzero
  std::vector<std::size_t> branch;  ///< root index per coordinate; empty means all zero
  friend bool operator==(const Seed&, const Seed&) = default;
};

/// Throws InvalidSeed unless k has n nonzero entries and each branch index
/// is below the matching degree (degrees empty: branch must be empty or zero).
void validate_seed(const Seed& seed, std::size_t n, const std::vector<std::uint32_t>& degrees = {});

struct SolutionPoint {
  std::vector<Complex> z;
  std::vector<Complex> y;
  Real residual_exp;  ///< max_i |e^{z_i} - y_i|
  Real residual_var;  ///< max over defining polynomials at (z, y)
  Real tolerance;
  Seed seed;
  Precision precision_bits = 0;
  std::size_t iterations = 0;
  std::vector<std::string> stage_log;
  friend bool operator==(const SolutionPoint&, const SolutionPoint&) = default;
};

struct SolveOptions {
  Precision precision = 256;
  std::size_t max_iter = 500;
  std::optional<Real> tol;                  ///< default 2^{-precision/2}
  std::optional<std::vector<Complex>> start;  ///< restart from this z instead of 2 pi i k
  std::optional<std::vector<Complex>> start_y;  ///< branch values at `start` (algebraic case)
};

/// 2^{-precision/2}.
Real default_tolerance(Precision precision);

/// e^{z_i} = P_i(z), P_i in n variables. residual_var = max |y_i - P_i(z)|.
SolutionPoint solve_masser_poly(const std::vector<MultiPoly>& p, const Seed& seed, const SolveOptions& options);

/// e^{z_i} = f_i(z) with p_i(z, f_i(z)) = 0, tracking the root branch.
/// residual_var = max |p_i(z, y_i)|.
SolutionPoint solve_masser_algebraic(const TriangularSystem& t, const Seed& seed, const SolveOptions& options);

struct VarietySolveOptions {
  SolveOptions solve;
  std::size_t samples = 5;
  std::uint64_t rng_seed = 0;
  bool require_both_dominant = false;
  bool enforce_hypotheses = true;  ///< false records the report but never refuses
  TriangularizeOptions triangularize;
};

/// Hypotheses, witness and triangular system prepared once per variety.
struct PreparedVariety {
  ExpVariety variety;
  HypothesisReport hypotheses;
  SamplePoint witness;
  TriangularSystem triangular;
};

/// Checks dim = n and pi1 dominance (and pi2 when required), then samples a
/// witness and triangularizes. Throws DimensionHypothesis or
/// DominanceHypothesis at the gate unless enforce_hypotheses is false.
PreparedVariety prepare_variety(const ExpVariety& v, const VarietySolveOptions& options);

/// Algebraic solve on the prepared triangular system, then re-checks every
/// original generator at (z, e^z); throws ExtraneousComponent on failure.
/// residual_var = max over the original generators.
SolutionPoint solve_prepared(const PreparedVariety& prepared, const Seed& seed, const SolveOptions& options);

SolutionPoint solve_on_variety(const ExpVariety& v, const Seed& seed, const VarietySolveOptions& options);

}  // namespace expclose
