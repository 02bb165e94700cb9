// Integer relations among the coordinates of a solution: additive
// (r.z = 0) and multiplicative (r.z in 2 pi i Z, i.e. e^{r.z} = 1), with the
// rational hyperplane and algebraic torus they define.

#pragma once

#include "expclose/intmat.hpp"
#include "expclose/masser.hpp"
#include "expclose/mp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace expclose {

enum class RelationKind { Additive, Multiplicative };

/// Rows are independent relations, primitive and sorted by height then
/// lexicographically. For multiplicative relations offsets[r] is the m0
/// with r.z = 2 pi i m0.
struct IntegerRelationMatrix {
  IntMatrix m;
  RelationKind kind = RelationKind::Additive;
  std::vector<mpz_class> offsets;
  Real witness_error;  ///< largest |r.z - 2 pi i m0| over the rows

  [[nodiscard]] mpz_class height() const { return m.height(); }
  friend bool operator==(const IntegerRelationMatrix&, const IntegerRelationMatrix&) = default;
};

struct Hyperplane {
  IntMatrix m;
  std::size_t dim = 0;  ///< n - rank(M), exact
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

struct Torus {
  IntMatrix m;
  std::size_t dim = 0;                       ///< n - rank(M) from the Smith form
  IntMatrix identity_component;              ///< M', saturated, in Hermite form
  std::vector<mpz_class> invariant_factors;  ///< of M; their product counts the components
  friend bool operator==(const Torus&, const Torus&) = default;
};

/// Threshold n * H * 2^{-precision/2} used to accept a relation.
Real relation_threshold(std::size_t n, const mpz_class& height_bound, Precision precision);

/// Throws PrecisionTooLow unless precision >= 4 log2(H) + 64.
void check_relation_precision(const mpz_class& height_bound, Precision precision);

/// LLL search on rows [e_i | C Re z_i | C Im z_i], C = 2^{precision/2};
/// returns nullopt when no relation of height <= H passes the threshold.
std::optional<IntegerRelationMatrix> find_additive_relations(const std::vector<Complex>& z,
                                                             const mpz_class& height_bound, Precision precision);

/// As above with 2 pi i appended to the coordinates.
std::optional<IntegerRelationMatrix> find_multiplicative_relations(const std::vector<Complex>& z,
                                                                   const mpz_class& height_bound, Precision precision);

Hyperplane build_hyperplane(const IntMatrix& m);

/// Throws ZeroMatrix for a zero matrix.
Torus build_torus(const IntMatrix& m);

/// max over the rows r of M' of |r.z - 2 pi i round(Im(r.z) / 2 pi)| <= tol.
bool on_torus(const Torus& t, const std::vector<Complex>& z, const Real& tol);

enum class Verdict { PresumedGeneric, RelationsFound };

struct GenericityReport {
  Verdict verdict = Verdict::PresumedGeneric;
  std::vector<IntegerRelationMatrix> relations;
  std::vector<Hyperplane> hyperplanes;  ///< one per relation
  std::vector<Torus> tori;              ///< one per relation
  mpz_class height_bound = 100;
  Precision precision_bits = 0;
  Real tolerance;
  int td_proxy = 0;
  std::vector<std::string> notes;
  friend bool operator==(const GenericityReport&, const GenericityReport&) = default;
};

/// Both searches at min(precision, s.precision_bits), then td_proxy =
/// n - rank(additive relations).
GenericityReport audit(const SolutionPoint& s, const mpz_class& height_bound, Precision precision);

}  // namespace expclose
