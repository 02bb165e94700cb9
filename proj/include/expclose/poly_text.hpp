// Text form of polynomials: terms `coeff * x1^e1 * ... * y1^f1 * ...`
// joined by ` + `, with complex coefficients parenthesised, e.g.
//   1 * y1 + -1 * x2
//   (1/2+3/4*i) * x1^2 * u + -7
// The parser accepts any polynomial expression in the given variable names
// built from + - * ^ (non-negative integer powers), division by constants,
// parentheses, the imaginary unit `i`, integers, fractions and decimals.

#pragma once

#include "expclose/multipoly.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace expclose {

/// x1..xn, y1..yn.
std::vector<std::string> variety_variable_names(std::size_t n);
/// x1..xn, u.
std::vector<std::string> triangular_variable_names(std::size_t n);

std::string format_poly(const MultiPoly& p, const std::vector<std::string>& names);
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& names);

}  // namespace expclose
