#pragma once

#include "expclose/mp.hpp"

#include <vector>

namespace expclose {

/// All complex roots of sum_k coeffs[k] u^k (Aberth-Ehrlich iteration then
/// Newton polishing), sorted by |u| ascending and then by principal argument.
/// The leading coefficient must be nonzero.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

/// Orders roots by |u| ascending, ties by principal argument ascending.
void sort_roots(std::vector<Complex>& roots);

/// Smallest pairwise distance among the roots (infinity-free: returns a
/// large value for fewer than two roots).
Real min_root_separation(const std::vector<Complex>& roots);

}  // namespace expclose
