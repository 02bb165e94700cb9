#pragma once

#include "expclose/mp.hpp"

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace expclose {

/// Exact element of Q(i). Both parts are kept in canonical (reduced,
/// positive-denominator) form by GMP.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational i() { return {0, 1}; }

  [[nodiscard]] const mpq_class& re() const { return re_; }
  [[nodiscard]] const mpq_class& im() const { return im_; }
  [[nodiscard]] bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  [[nodiscard]] bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  [[nodiscard]] GaussianRational conj() const { return {re_, -im_}; }
  [[nodiscard]] mpq_class norm() const { return re_ * re_ + im_ * im_; }
  [[nodiscard]] GaussianRational inverse() const;
  [[nodiscard]] Complex to_complex(Precision prec) const { return {re_, im_, prec}; }

  /// `a/b`, or `a/b+c/d*i` when the imaginary part is nonzero.
  [[nodiscard]] std::string to_string() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Parses a coefficient literal: `a/b`, `a/b+c/d*i`, `-i`, `3*i`, decimals such
/// as `1.25` (read exactly), optionally wrapped in parentheses.
GaussianRational parse_gaussian_rational(std::string_view text);

/// Exact rational value of a decimal string such as "-1.4142e-3".
mpq_class parse_decimal_exact(std::string_view text);

}  // namespace expclose
