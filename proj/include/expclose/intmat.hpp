// Exact integer matrices: rank, Smith and Hermite normal forms, LLL.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace expclose {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows, std::size_t cols);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::vector<mpz_class> row(std::size_t r) const;
  void append_row(const std::vector<mpz_class>& row);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool has_zero_row() const;
  /// max |entry|
  [[nodiscard]] mpz_class height() const;
  [[nodiscard]] IntMatrix transpose() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Rank over Q (fraction-free elimination).
std::size_t rank(const IntMatrix& m);

/// Smith normal form: L * M * R = D with L, R unimodular and D diagonal
/// with d_1 | d_2 | ... (non-negative). Stored is R^{-1} rather than R, so
/// M = L^{-1} * D * right_inverse.
struct SmithForm {
  std::vector<mpz_class> invariant_factors;  ///< nonzero diagonal of D
  IntMatrix diagonal;                        ///< D, same shape as M
  IntMatrix right_inverse;                   ///< R^{-1}, cols x cols, unimodular
  [[nodiscard]] std::size_t rank() const { return invariant_factors.size(); }
};
SmithForm smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form with zero rows removed: upper echelon,
/// positive pivots, entries above each pivot reduced into [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Basis of the saturation (Q-rowspace intersected with Z^n) of the row
/// lattice of m, in Hermite normal form.
IntMatrix saturate_rows(const IntMatrix& m);

/// Integral LLL (exact arithmetic) on the rows of `basis`, which must be
/// linearly independent. delta is num/den in (1/4, 1].
IntMatrix lll_reduce(const IntMatrix& basis, long delta_num = 99, long delta_den = 100);

/// Basis of {x in Q^cols : M x = 0} as integer column vectors (primitive).
std::vector<std::vector<mpz_class>> rational_kernel(const IntMatrix& m);

/// gcd of entries, made non-negative; 0 for a zero vector.
mpz_class content(const std::vector<mpz_class>& v);

}  // namespace expclose
