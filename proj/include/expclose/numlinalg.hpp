// Dense complex linear algebra at multiprecision.

#pragma once

#include "expclose/mp.hpp"

#include <cstddef>
#include <vector>

namespace expclose {

class CMatrix {
 public:
  CMatrix(std::size_t rows, std::size_t cols, Precision prec);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] Precision precision() const { return prec_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Rows of `top` followed by rows of `bottom`.
  static CMatrix stack(const CMatrix& top, const CMatrix& bottom);

 private:
  std::size_t rows_;
  std::size_t cols_;
  Precision prec_;
  std::vector<Complex> data_;
};

/// A = U diag(sigma) V^H with sigma listed in descending order; U is
/// rows x k, V is cols x k with k = cols. Columns of U belonging to a zero
/// singular value are zero.
struct Svd {
  CMatrix u;
  std::vector<Real> sigma;
  CMatrix v;
};

/// One-sided (Hestenes) Jacobi SVD.
Svd svd(const CMatrix& a);
std::vector<Real> singular_values(const CMatrix& a);

/// 2^{-prec/4}: the relative cut-off below which a singular value counts as zero.
Real rank_cutoff(Precision prec);

/// Number of singular values >= rank_cutoff(prec) * max(1, sigma_max).
std::size_t numerical_rank(const CMatrix& a);

/// Gaussian elimination with partial pivoting for square A. Throws
/// ErrorKind::NumericRange if a pivot vanishes.
std::vector<Complex> solve_linear(CMatrix a, std::vector<Complex> b);

/// Minimum-norm least-squares solution A^+ b, discarding singular values
/// below rank_cutoff(prec) * sigma_max.
std::vector<Complex> pinv_solve(const CMatrix& a, const std::vector<Complex>& b);

Real max_abs(const std::vector<Complex>& v);

}  // namespace expclose
