#include "expclose/roots.hpp"

#include "expclose/errors.hpp"

#include <algorithm>
#include <cmath>

namespace expclose {

namespace {

// p(u) and p'(u) by Horner
void horner(const std::vector<Complex>& c, const Complex& u, Complex& value, Complex& slope) {
  const Precision prec = u.precision();
  value = c.back();
  slope = Complex(prec);
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    slope = slope * u + value;
    value = value * u + c[k];
  }
}

}  // namespace

void sort_roots(std::vector<Complex>& roots) {
  // compare at a few bits less than working precision so that conjugate
  // pairs and ties in modulus are decided by argument
  std::stable_sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    const Precision p = std::max(a.precision(), b.precision());
    const Real ma = a.abs();
    const Real mb = b.abs();
    const Real slack = Real::pow2(-static_cast<long>(p) / 2, p) * max(Real(1L, p), max(ma, mb));
    if (abs(ma - mb) > slack) return ma < mb;
    return a.arg() < b.arg();
  });
}

Real min_root_separation(const std::vector<Complex>& roots) {
  const Precision prec = roots.empty() ? 53 : roots.front().precision();
  Real best = Real::pow2(1L << 20, prec);
  for (std::size_t a = 0; a < roots.size(); ++a) {
    for (std::size_t b = a + 1; b < roots.size(); ++b) best = min(best, (roots[a] - roots[b]).abs());
  }
  return best;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs_in) {
  if (coeffs_in.size() < 2) throw Error(ErrorKind::DegreeZero, "root finding needs degree >= 1");
  if (coeffs_in.back().is_zero()) throw Error(ErrorKind::SingularLeadingCoefficient, "leading coefficient is zero");
  const Precision prec = coeffs_in.back().precision();
  const std::size_t degree = coeffs_in.size() - 1;
  std::vector<Complex> c;
  c.reserve(coeffs_in.size());
  const Complex lead = coeffs_in.back();
  for (const Complex& x : coeffs_in) c.push_back(x / lead);

  if (degree == 1) return {-c[0]};

  // initial radius: max_k |c_k|^{1/(n-k)}, a bound on the root moduli up to a factor 2
  double radius = 0.0;
  for (std::size_t k = 0; k < degree; ++k) {
    const double l2 = c[k].abs().log2_abs();
    if (std::isfinite(l2)) radius = std::max(radius, std::exp2(l2 / static_cast<double>(degree - k)));
  }
  if (radius == 0.0) radius = 1.0;
  std::vector<Complex> z;
  z.reserve(degree);
  const Real two_pi = Real::pi(prec) * Real(2L, prec);
  for (std::size_t k = 0; k < degree; ++k) {
    const Real angle = two_pi * Real(static_cast<long>(k), prec) / Real(static_cast<long>(degree), prec) + Real(0.4, prec);
    const Real r(radius, prec);
    z.emplace_back(r * cos(angle), r * sin(angle));
  }

  const Real tiny = Real::pow2(-static_cast<long>(prec) + 8, prec);
  const Real one(1L, prec);
  Complex value(prec);
  Complex slope(prec);
  for (int iter = 0; iter < 4000; ++iter) {
    Real largest_move(0L, prec);
    for (std::size_t k = 0; k < degree; ++k) {
      horner(c, z[k], value, slope);
      if (value.is_zero()) continue;
      const Complex ratio = value / slope;
      Complex repulsion(prec);
      for (std::size_t j = 0; j < degree; ++j) {
        if (j != k) repulsion += Complex(one, Real(0L, prec)) / (z[k] - z[j]);
      }
      const Complex step = ratio / (Complex(one, Real(0L, prec)) - ratio * repulsion);
      if (!step.is_finite()) continue;
      z[k] -= step;
      largest_move = max(largest_move, step.abs() / max(one, z[k].abs()));
    }
    if (largest_move <= tiny) break;
  }
  // Newton polish
  for (Complex& root : z) {
    for (int k = 0; k < 3; ++k) {
      horner(c, root, value, slope);
      if (slope.is_zero() || value.is_zero()) break;
      root -= value / slope;
    }
  }
  sort_roots(z);
  return z;
}

}  // namespace expclose
