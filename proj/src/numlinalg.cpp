#include "expclose/numlinalg.hpp"

#include "expclose/errors.hpp"

#include <algorithm>
#include <numeric>

namespace expclose {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, Precision prec)
    : rows_(rows), cols_(cols), prec_(prec), data_(rows * cols, Complex(prec)) {}

CMatrix CMatrix::stack(const CMatrix& top, const CMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw Error(ErrorKind::Arity, "stack: column mismatch");
  CMatrix out(top.rows() + bottom.rows(), top.cols(), std::max(top.precision(), bottom.precision()));
  for (std::size_t r = 0; r < top.rows(); ++r) {
    for (std::size_t c = 0; c < top.cols(); ++c) out(r, c) = top(r, c);
  }
  for (std::size_t r = 0; r < bottom.rows(); ++r) {
    for (std::size_t c = 0; c < top.cols(); ++c) out(top.rows() + r, c) = bottom(r, c);
  }
  return out;
}

namespace {

// conj(a)^T b over column pairs
Complex column_inner(const CMatrix& m, std::size_t p, std::size_t q) {
  Complex s(m.precision());
  for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, p).conj() * m(r, q);
  return s;
}

Real column_norm2(const CMatrix& m, std::size_t p) {
  Real s(0L, m.precision());
  for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, p).norm2();
  return s;
}

void rotate_columns(CMatrix& m, std::size_t p, std::size_t q, const Complex& phase, const Real& c, const Real& s) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const Complex ap = m(r, p);
    const Complex aq = m(r, q) * phase;
    m(r, p) = ap * c - aq * s;
    m(r, q) = ap * s + aq * c;
  }
}

}  // namespace

Svd svd(const CMatrix& a) {
  const Precision prec = a.precision();
  const std::size_t n = a.cols();
  CMatrix work = a;
  CMatrix v(n, n, prec);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = Complex(Real(1L, prec), Real(0L, prec));

  const Real eps = Real::pow2(-static_cast<long>(prec) + 4, prec);
  const Real one(1L, prec);
  const Real two(2L, prec);
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Real alpha = column_norm2(work, p);
        const Real beta = column_norm2(work, q);
        const Complex gamma = column_inner(work, p, q);
        const Real g = gamma.abs();
        if (g.is_zero() || g <= eps * sqrt(alpha * beta)) continue;
        rotated = true;
        // rotate q by exp(-i arg gamma) so the 2x2 Gram block becomes real
        const Complex phase(gamma.re() / g, -gamma.im() / g);
        const Real zeta = (beta - alpha) / (two * g);
        Real t = one / (abs(zeta) + sqrt(one + zeta * zeta));
        if (zeta.sign() < 0) t = -t;
        const Real c = one / sqrt(one + t * t);
        const Real s = c * t;
        rotate_columns(work, p, q, phase, c, s);
        rotate_columns(v, p, q, phase, c, s);
      }
    }
    if (!rotated) break;
  }

  std::vector<Real> sigma;
  sigma.reserve(n);
  for (std::size_t j = 0; j < n; ++j) sigma.push_back(sqrt(column_norm2(work, j)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[y] < sigma[x]; });

  Svd out{CMatrix(a.rows(), n, prec), {}, CMatrix(n, n, prec)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma.push_back(sigma[j]);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      out.u(r, k) = sigma[j].is_zero() ? Complex(prec) : work(r, j) * (one / sigma[j]);
    }
    for (std::size_t r = 0; r < n; ++r) out.v(r, k) = v(r, j);
  }
  return out;
}

std::vector<Real> singular_values(const CMatrix& a) { return svd(a).sigma; }

Real rank_cutoff(Precision prec) { return Real::pow2(-static_cast<long>(prec) / 4, prec); }

std::size_t numerical_rank(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  const auto sigma = singular_values(a);
  const Real one(1L, a.precision());
  const Real cutoff = rank_cutoff(a.precision()) * max(one, sigma.front());
  return static_cast<std::size_t>(std::count_if(sigma.begin(), sigma.end(), [&](const Real& s) { return s >= cutoff; }));
}

std::vector<Complex> solve_linear(CMatrix a, std::vector<Complex> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw Error(ErrorKind::Arity, "solve_linear: shape mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    Real best = a(k, k).norm2();
    for (std::size_t r = k + 1; r < n; ++r) {
      Real cand = a(r, k).norm2();
      if (best < cand) {
        best = std::move(cand);
        pivot = r;
      }
    }
    if (best.is_zero()) throw Error(ErrorKind::NumericRange, "singular linear system");
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(pivot, c));
      std::swap(b[k], b[pivot]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex f = a(r, k) / a(k, k);
      if (f.is_zero()) continue;
      for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
      b[r] -= f * b[k];
    }
  }
  std::vector<Complex> x(n, Complex(a.precision()));
  for (std::size_t k = n; k-- > 0;) {
    Complex s = b[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= a(k, c) * x[c];
    x[k] = s / a(k, k);
  }
  return x;
}

std::vector<Complex> pinv_solve(const CMatrix& a, const std::vector<Complex>& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::Arity, "pinv_solve: shape mismatch");
  const Precision prec = a.precision();
  const Svd d = svd(a);
  std::vector<Complex> x(a.cols(), Complex(prec));
  if (d.sigma.empty() || d.sigma.front().is_zero()) return x;
  const Real cutoff = rank_cutoff(prec) * d.sigma.front();
  for (std::size_t k = 0; k < d.sigma.size(); ++k) {
    if (d.sigma[k] < cutoff) break;
    Complex coef(prec);
    for (std::size_t r = 0; r < a.rows(); ++r) coef += d.u(r, k).conj() * b[r];
    coef *= Real(1L, prec) / d.sigma[k];
    for (std::size_t r = 0; r < a.cols(); ++r) x[r] += d.v(r, k) * coef;
  }
  return x;
}

Real max_abs(const std::vector<Complex>& v) {
  Real m(0L, v.empty() ? 53 : v.front().precision());
  for (const Complex& c : v) m = max(m, c.abs());
  return m;
}

}  // namespace expclose
