// Reduction of a variety with dominant first projection to per-coordinate
// polynomials p_i(x1..xn, u) with p_i(x, y_i) = 0 on the component through
// a witness point.

#pragma once

#include "expclose/multipoly.hpp"
#include "expclose/variety.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace expclose {

/// polys[i] lives in n+1 variables ordered x1..xn, u (u at index n).
struct TriangularSystem {
  std::size_t n = 0;
  std::vector<MultiPoly> polys;

  [[nodiscard]] std::vector<std::uint32_t> degrees_in_u() const;
  /// Throws Arity/DegreeZero unless every poly has n+1 variables, degree
  /// >= 1 in u, is not a constant times u, and is square-free in u.
  void validate() const;
  friend bool operator==(const TriangularSystem&, const TriangularSystem&) = default;
};

struct TriangularizeOptions {
  std::size_t term_limit = kDefaultTermLimit;
};

/// For each i eliminates y_j (j != i, ascending) by iterated resultants,
/// then keeps the square-free factors of the eliminant that vanish at the
/// witness (relative residual <= 2^{-p/4}).
/// Throws EliminationCollapsed or AllFactorsExtraneous (stage "triangularize").
TriangularSystem triangularize(const ExpVariety& v, const SamplePoint& witness, Precision precision,
                               const TriangularizeOptions& options = {});

/// Product of the u-degrees.
std::uint64_t fiber_bound(const TriangularSystem& t);

/// |p(point)| / max(1, sum |c_t m_t(point)|).
Real relative_residual(const MultiPoly& p, const std::vector<Complex>& point);

}  // namespace expclose
