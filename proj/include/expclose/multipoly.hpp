// Sparse multivariate polynomials over Q(i).

#pragma once

#include "expclose/gaussian_rational.hpp"
#include "expclose/mp.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace expclose {

using Exponents = std::vector<std::uint32_t>;

/// Default bound on stored terms for any intermediate result of elimination.
inline constexpr std::size_t kDefaultTermLimit = 100000;

class MultiPoly {
 public:
  using TermMap = std::map<Exponents, GaussianRational>;

  explicit MultiPoly(std::size_t num_vars);
  /// Zero coefficients are dropped; all exponent vectors must have length num_vars.
  MultiPoly(std::size_t num_vars, const TermMap& terms);

  static MultiPoly constant(std::size_t num_vars, const GaussianRational& c);
  static MultiPoly variable(std::size_t num_vars, std::size_t index);
  static MultiPoly monomial(const Exponents& exps, const GaussianRational& c);

  [[nodiscard]] std::size_t num_vars() const { return num_vars_; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] std::size_t term_count() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] GaussianRational constant_term() const;
  [[nodiscard]] std::uint32_t degree_in(std::size_t var) const;
  [[nodiscard]] std::uint32_t total_degree() const;
  [[nodiscard]] bool involves(std::size_t var) const { return degree_in(var) > 0; }

  /// Coefficients c_k (k = 0..deg) with p = sum_k c_k * var^k; each c_k is
  /// free of var but keeps num_vars.
  [[nodiscard]] std::vector<MultiPoly> coefficients_in(std::size_t var) const;
  static MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, std::size_t var);
  [[nodiscard]] MultiPoly leading_coefficient_in(std::size_t var) const;

  /// Formal partial derivative.
  [[nodiscard]] MultiPoly partial(std::size_t var) const;

  /// Re-embeds into `new_num_vars` variables: old variable j becomes new
  /// variable mapping[j]. Requires mapping to be injective.
  [[nodiscard]] MultiPoly remap(std::size_t new_num_vars, std::span<const std::size_t> mapping) const;

  /// Coefficient of the lex-largest term (variable 0 most significant).
  [[nodiscard]] const GaussianRational& lex_leading_coefficient() const;
  /// Scales so the lex-leading coefficient of the leading coefficient in
  /// `var` is 1. Zero stays zero.
  [[nodiscard]] MultiPoly monic_in(std::size_t var) const;
  /// Scales so the lex-leading coefficient is 1.
  [[nodiscard]] MultiPoly monic() const;

  [[nodiscard]] Complex eval(std::span<const Complex> point) const;
  [[nodiscard]] GaussianRational eval_exact(std::span<const GaussianRational> point) const;
  /// sum_t |c_t| * |m_t(point)|; scale for relative residuals.
  [[nodiscard]] Real magnitude_at(std::span<const Complex> point) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const GaussianRational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const GaussianRational& c) { return a *= c; }
  friend MultiPoly operator*(const GaussianRational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator-(const MultiPoly& a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

 private:
  void check_arity(const MultiPoly& o) const;
  std::size_t num_vars_;
  TermMap terms_;
};

MultiPoly pow(const MultiPoly& p, unsigned e);

/// Exact quotient p / d. Throws ErrorKind::NotDivisible if d does not divide p.
MultiPoly exact_divide(const MultiPoly& p, const MultiPoly& d);

/// Pseudo-remainder of a by b with respect to var.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var);

/// Greatest common divisor, normalised with monic(); gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

/// gcd of the coefficients of p viewed as a polynomial in var.
MultiPoly content_in(const MultiPoly& p, std::size_t var);
MultiPoly primitive_part_in(const MultiPoly& p, std::size_t var);

/// Square-free decomposition (Yun) of the primitive part of p in var:
/// entry k-1 is the product f_k of the irreducible factors of multiplicity
/// k, so p ~ prod f_k^k up to content. Entries may be the constant 1.
std::vector<MultiPoly> square_free_factors_in(const MultiPoly& p, std::size_t var);
MultiPoly square_free_part_in(const MultiPoly& p, std::size_t var);

/// Determinant of the Sylvester matrix of p and q in var (fraction-free
/// Bareiss elimination). The result is free of var. Throws DegreeZero when
/// either input has degree zero in var, TermLimit when an intermediate
/// entry exceeds term_limit terms.
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var,
                    std::size_t term_limit = kDefaultTermLimit);

}  // namespace expclose
