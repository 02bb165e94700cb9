// Varieties V in C^n x (C*)^n and numerical checks of dimension and
// dominance of the two coordinate projections.

#pragma once

#include "expclose/intmat.hpp"
#include "expclose/multipoly.hpp"
#include "expclose/numlinalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace expclose {

/// A constant outside Q(i), given by a decimal approximation and radius.
/// It has already been substituted into the generators as the exact
/// rational value of the decimal; the record keeps it for reports.
struct ApproxConstant {
  std::string name;
  std::string value_re;
  std::string value_im;
  std::string radius;
  friend bool operator==(const ApproxConstant&, const ApproxConstant&) = default;
};

/// Generators in 2n variables ordered x1..xn, y1..yn.
struct ExpVariety {
  std::size_t n = 0;
  std::vector<MultiPoly> generators;
  std::string coefficient_field_note = "Q(i)";
  std::vector<ApproxConstant> approx_constants;

  /// Throws Arity unless n >= 1, generators nonempty and each has 2n variables.
  void validate() const;
  friend bool operator==(const ExpVariety&, const ExpVariety&) = default;
};

struct SamplePoint {
  std::vector<Complex> coords;  ///< x1..xn, y1..yn
  Real max_residual;            ///< max_j |g_j(coords)|
};

struct SamplingOptions {
  std::size_t retry_limit = 12;
  std::size_t max_newton = 120;
};

/// Damped least-squares Newton on the generators plus random affine slices
/// through a random start point. Attempt a uses a mod (n+1) slices, with
/// fresh randomness each time. Rejects points with some |y_i| < 2^{-p/4}.
/// Throws CoordinateHyperplane if every converged attempt had some y_i = 0,
/// NoConvergence otherwise.
SamplePoint sample_point(const ExpVariety& v, std::uint64_t rng_seed, Precision precision,
                         const SamplingOptions& options = {});

/// Max over generators of |g_j(coords)|.
Real max_generator_residual(const ExpVariety& v, const std::vector<Complex>& coords);

/// Jacobian of the generators (rows) in the 2n variables (columns).
CMatrix generator_jacobian(const ExpVariety& v, const std::vector<Complex>& coords);

/// `count` samples, sample k drawn from the stream (rng_seed, k). Failed
/// draws are skipped; throws NoSample (or CoordinateHyperplane) if none succeed.
std::vector<SamplePoint> draw_samples(const ExpVariety& v, std::size_t count, std::uint64_t rng_seed,
                                      Precision precision);

/// 2n - rank of the generator Jacobian, majority vote over samples.
/// Throws RankUnstable when no value has a strict majority.
int estimate_dimension(const ExpVariety& v, std::size_t samples, std::uint64_t rng_seed, Precision precision);

enum class Projection { First, Second };

/// Rank of d(pi) on the numerical tangent space equals n at a majority of
/// samples. Throws DimensionHypothesis when the dimension estimate is not n.
bool check_dominant(const ExpVariety& v, Projection which, std::size_t samples, std::uint64_t rng_seed,
                    Precision precision);

struct HypothesisReport {
  int dim_estimate = 0;
  bool pi1_dominant = false;
  bool pi2_dominant = false;
  std::size_t samples_used = 0;
  Precision precision_bits = 0;
  Real tolerance;  ///< relative singular value cut-off
  std::uint64_t rng_seed = 0;
  std::vector<int> sample_dimensions;
  std::vector<std::string> notes;

  [[nodiscard]] bool dimension_ok(std::size_t n) const { return dim_estimate == static_cast<int>(n); }
  friend bool operator==(const HypothesisReport&, const HypothesisReport&) = default;
};

/// Dimension plus both dominance tests, sharing one set of samples. The
/// dominance flags are false (with a note) when the dimension is not n.
HypothesisReport check_hypotheses(const ExpVariety& v, std::size_t samples, std::uint64_t rng_seed,
                                  Precision precision);

struct RotundityEntry {
  IntMatrix m;
  std::size_t rank_m = 0;
  int dim_estimate = 0;  ///< rank of the differential of y -> (Mx, y^M) on the tangent space
  bool holds = false;    ///< dim_estimate >= rank_m
};

/// For each nonzero M, estimates dim(M.V) at the samples by the rank of
/// the pushforward differential and compares it with rank(M). Requires pi1
/// dominance (throws DominanceHypothesis otherwise).
std::vector<RotundityEntry> rotundity_spot_check(const ExpVariety& v, const std::vector<IntMatrix>& matrices,
                                                 std::size_t samples, std::uint64_t rng_seed, Precision precision);

}  // namespace expclose
