#include "expclose/intmat.hpp"

#include "expclose/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace expclose {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::Arity, "ragged integer matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows, std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

std::vector<mpz_class> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

void IntMatrix::append_row(const std::vector<mpz_class>& row) {
  if (row.size() != cols_) throw Error(ErrorKind::Arity, "append_row: length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpz_class& v) { return sgn(v) == 0; });
}

bool IntMatrix::has_zero_row() const {
  for (std::size_t r = 0; r < rows_; ++r) {
    bool zero = true;
    for (std::size_t c = 0; c < cols_ && zero; ++c) zero = sgn((*this)(r, c)) == 0;
    if (zero) return true;
  }
  return false;
}

mpz_class IntMatrix::height() const {
  mpz_class h = 0;
  for (const auto& v : data_) h = std::max(h, mpz_class(abs(v)));
  return h;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::Arity, "integer matrix product shape mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = 0;
  mpz_class previous = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows() && sgn(a(pivot, c)) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    a.swap_rows(r, pivot);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        a(i, j) = (a(i, j) * a(r, c) - a(i, c) * a(r, j)) / previous;
      }
      a(i, c) = 0;
    }
    previous = a(r, c);
    ++r;
  }
  return r;
}

namespace {

struct Bezout {
  mpz_class g, s, t;  // s*a + t*b = g >= 0
};

Bezout extended_gcd(const mpz_class& a, const mpz_class& b) {
  Bezout out;
  mpz_gcdext(out.g.get_mpz_t(), out.s.get_mpz_t(), out.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// rows (p, q) <- [[s, t], [-b/g, a/g]] * rows (p, q), where a = m(p,col), b = m(q,col);
// afterwards m(p,col) = g and m(q,col) = 0.
void combine_rows(IntMatrix& m, std::size_t p, std::size_t q, std::size_t col) {
  const mpz_class a = m(p, col);
  const mpz_class b = m(q, col);
  if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
    const mpz_class f = b / a;
    for (std::size_t c = 0; c < m.cols(); ++c) m(q, c) -= f * m(p, c);
    return;
  }
  const Bezout e = extended_gcd(a, b);
  const mpz_class ag = a / e.g;
  const mpz_class bg = b / e.g;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const mpz_class x = m(p, c);
    const mpz_class y = m(q, c);
    m(p, c) = e.s * x + e.t * y;
    m(q, c) = -bg * x + ag * y;
  }
}

// columns (p, q) <- columns (p, q) * [[s, -b/g], [t, a/g]], a = m(row,p), b = m(row,q);
// the inverse [[a/g, b/g], [-t, s]] is applied to rows (p, q) of rinv.
void combine_cols(IntMatrix& m, IntMatrix& rinv, std::size_t p, std::size_t q, std::size_t row) {
  const mpz_class a = m(row, p);
  const mpz_class b = m(row, q);
  if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
    // col_q -= f col_p, whose inverse adds f * row_q to row_p of rinv
    const mpz_class f = b / a;
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, q) -= f * m(r, p);
    for (std::size_t c = 0; c < rinv.cols(); ++c) rinv(p, c) += f * rinv(q, c);
    return;
  }
  const Bezout e = extended_gcd(a, b);
  const mpz_class ag = a / e.g;
  const mpz_class bg = b / e.g;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const mpz_class x = m(r, p);
    const mpz_class y = m(r, q);
    m(r, p) = x * e.s + y * e.t;
    m(r, q) = -x * bg + y * ag;
  }
  for (std::size_t c = 0; c < rinv.cols(); ++c) {
    const mpz_class x = rinv(p, c);
    const mpz_class y = rinv(q, c);
    rinv(p, c) = ag * x + bg * y;
    rinv(q, c) = -e.t * x + e.s * y;
  }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  IntMatrix rinv = IntMatrix::identity(m.cols());
  const std::size_t limit = std::min(a.rows(), a.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    bool found = false;
    std::size_t pr = t;
    std::size_t pc = t;
    mpz_class best;
    for (std::size_t r = t; r < a.rows(); ++r) {
      for (std::size_t c = t; c < a.cols(); ++c) {
        if (sgn(a(r, c)) != 0 && (!found || abs(a(r, c)) < best)) {
          found = true;
          best = abs(a(r, c));
          pr = r;
          pc = c;
        }
      }
    }
    if (!found) break;
    a.swap_rows(t, pr);
    a.swap_cols(t, pc);
    rinv.swap_rows(t, pc);

    while (true) {
      bool dirty = false;
      for (std::size_t c = t + 1; c < a.cols(); ++c) {
        if (sgn(a(t, c)) != 0) {
          combine_cols(a, rinv, t, c, t);
          dirty = true;
        }
      }
      for (std::size_t r = t + 1; r < a.rows(); ++r) {
        if (sgn(a(r, t)) != 0) {
          combine_rows(a, t, r, t);
          dirty = true;
        }
      }
      if (dirty) continue;
      // divisibility of the trailing block by the pivot
      std::size_t bad_row = a.rows();
      for (std::size_t r = t + 1; r < a.rows() && bad_row == a.rows(); ++r) {
        for (std::size_t c = t + 1; c < a.cols(); ++c) {
          if (!mpz_divisible_p(a(r, c).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad_row = r;
            break;
          }
        }
      }
      if (bad_row == a.rows()) break;
      for (std::size_t c = 0; c < a.cols(); ++c) a(t, c) += a(bad_row, c);
    }
    if (sgn(a(t, t)) < 0) {
      for (std::size_t c = 0; c < a.cols(); ++c) a(t, c) = -a(t, c);
    }
  }
  SmithForm out{{}, a, rinv};
  for (std::size_t k = 0; k < t; ++k) out.invariant_factors.push_back(a(k, k));
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows() && sgn(a(pivot, c)) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    a.swap_rows(r, pivot);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (sgn(a(i, c)) != 0) combine_rows(a, r, i, c);
    }
    if (sgn(a(r, c)) < 0) {
      for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = -a(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
      if (sgn(q) == 0) continue;
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= q * a(r, j);
    }
    ++r;
  }
  IntMatrix out(0, a.cols());
  for (std::size_t i = 0; i < r; ++i) out.append_row(a.row(i));
  return out;
}

IntMatrix saturate_rows(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  IntMatrix basis(0, m.cols());
  for (std::size_t k = 0; k < s.rank(); ++k) basis.append_row(s.right_inverse.row(k));
  return hermite_normal_form(basis);
}

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

mpz_class round_div(const mpz_class& num, const mpz_class& den) {
  // nearest integer to num/den for den > 0
  mpz_class q;
  const mpz_class twice = 2 * num + den;
  const mpz_class twice_den = 2 * den;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), twice_den.get_mpz_t());
  return q;
}

}  // namespace

IntMatrix lll_reduce(const IntMatrix& input, long delta_num, long delta_den) {
  const std::size_t n = input.rows();
  if (n == 0) return input;
  // 1-based indexing below follows the textbook integral formulation
  std::vector<std::vector<mpz_class>> b(n + 1);
  for (std::size_t i = 1; i <= n; ++i) b[i] = input.row(i - 1);
  std::vector<mpz_class> d(n + 1, 0);
  std::vector<std::vector<mpz_class>> lambda(n + 1, std::vector<mpz_class>(n + 1, 0));

  auto redi = [&](std::size_t k, std::size_t l) {
    if (2 * abs(lambda[k][l]) <= d[l]) return;
    const mpz_class q = round_div(lambda[k][l], d[l]);
    for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[l][c];
    lambda[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lambda[k][i] -= q * lambda[l][i];
  };

  std::size_t kmax = 1;
  auto swapi = [&](std::size_t k) {
    std::swap(b[k], b[k - 1]);
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lambda[k][j], lambda[k - 1][j]);
    const mpz_class lam = lambda[k][k - 1];
    const mpz_class big_b = (d[k - 2] * d[k] + lam * lam) / d[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const mpz_class t = lambda[i][k];
      lambda[i][k] = (d[k] * lambda[i][k - 1] - lam * t) / d[k - 1];
      lambda[i][k - 1] = (big_b * t + lam * lambda[i][k]) / d[k];
    }
    d[k - 1] = big_b;
  };

  d[0] = 1;
  d[1] = dot(b[1], b[1]);
  if (sgn(d[1]) == 0) throw Error(ErrorKind::Arity, "lll_reduce: basis vectors are linearly dependent");
  std::size_t k = 2;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        mpz_class u = dot(b[k], b[j]);
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lambda[k][i] * lambda[j][i]) / d[i - 1];
        if (j < k) {
          lambda[k][j] = u;
        } else {
          d[k] = u;
          if (sgn(d[k]) == 0) throw Error(ErrorKind::Arity, "lll_reduce: basis vectors are linearly dependent");
        }
      }
    }
    redi(k, k - 1);
    const mpz_class& lam = lambda[k][k - 1];
    if (delta_den * d[k] * d[k - 2] < delta_num * d[k - 1] * d[k - 1] - delta_den * lam * lam) {
      swapi(k);
      k = std::max<std::size_t>(2, k - 1);
    } else {
      for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
      ++k;
    }
  }
  IntMatrix out(0, input.cols());
  for (std::size_t i = 1; i <= n; ++i) out.append_row(b[i]);
  return out;
}

mpz_class content(const std::vector<mpz_class>& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

std::vector<std::vector<mpz_class>> rational_kernel(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c);
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    const mpq_class inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<mpz_class>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<mpq_class> x(cols, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = -a[i][free];
    mpz_class lcm = 1;
    for (const auto& q : x) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> xi(cols);
    for (std::size_t j = 0; j < cols; ++j) xi[j] = mpz_class(x[j] * lcm);
    const mpz_class g = content(xi);
    for (auto& v : xi) v /= g;
    basis.push_back(std::move(xi));
  }
  return basis;
}

}  // namespace expclose
