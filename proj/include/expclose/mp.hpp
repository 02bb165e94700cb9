// Multiprecision real and complex values backed by MPFR.
//
// Every value carries its own binary precision. Binary operations produce
// a result at the larger of the two operand precisions; all roundings are
// to nearest.

#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace expclose {

using Precision = mpfr_prec_t;

class Real {
 public:
  explicit Real(Precision prec = 53);
  Real(long value, Precision prec);
  Real(int value, Precision prec) : Real(static_cast<long>(value), prec) {}
  Real(double value, Precision prec);
  Real(const mpq_class& value, Precision prec);
  Real(const mpz_class& value, Precision prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a decimal (or "@nan@"/"@inf@") string at the given precision.
  static Real parse(std::string_view text, Precision prec);
  /// 2^e, exact.
  static Real pow2(long exponent, Precision prec);
  static Real pi(Precision prec);

  [[nodiscard]] Precision precision() const { return mpfr_get_prec(value_); }
  [[nodiscard]] mpfr_ptr raw() { return value_; }
  [[nodiscard]] mpfr_srcptr raw() const { return value_; }

  [[nodiscard]] Real with_precision(Precision prec) const;
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(value_) != 0; }
  [[nodiscard]] int sign() const { return mpfr_sgn(value_); }
  [[nodiscard]] double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Nearest integer (ties away from zero).
  [[nodiscard]] mpz_class round_to_integer() const;
  /// log2 |x| as a double; -inf for zero.
  [[nodiscard]] double log2_abs() const;

  /// Shortest decimal string that reads back to the identical value.
  [[nodiscard]] std::string to_string() const;
  /// Decimal string with a fixed number of significant digits.
  [[nodiscard]] std::string to_string(std::size_t digits) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);

  friend bool operator==(const Real& a, const Real& b);
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
/// Same-precision bitwise identity (value and precision).
bool identical(const Real& a, const Real& b);

class Complex {
 public:
  explicit Complex(Precision prec = 53) : re_(prec), im_(prec) {}
  Complex(Real re, Real im);
  Complex(const mpq_class& re, const mpq_class& im, Precision prec)
      : re_(re, prec), im_(im, prec) {}
  Complex(double re, double im, Precision prec) : re_(re, prec), im_(im, prec) {}

  static Complex i(Precision prec) { return {Real(0L, prec), Real(1L, prec)}; }

  [[nodiscard]] const Real& re() const { return re_; }
  [[nodiscard]] const Real& im() const { return im_; }
  [[nodiscard]] Precision precision() const;
  [[nodiscard]] Complex with_precision(Precision prec) const;

  [[nodiscard]] bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  [[nodiscard]] bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  [[nodiscard]] Real norm2() const;
  [[nodiscard]] Real abs() const;
  /// Principal argument in (-pi, pi].
  [[nodiscard]] Real arg() const;
  [[nodiscard]] Complex conj() const { return {re_, -im_}; }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator*(const Real& b, Complex a) { return a *= b; }
  friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const Complex& a, const Complex& b) = default;

 private:
  Real re_;
  Real im_;
};

Complex exp(const Complex& z);
/// Principal logarithm: imaginary part in (-pi, pi].
Complex log(const Complex& z);
Complex pow(const Complex& z, std::uint64_t e);
Complex pow(const Complex& z, long e);
bool identical(const Complex& a, const Complex& b);

/// Deterministic random source. Doubles are built from raw 64-bit draws so
/// that streams agree across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream derived from (seed, index) by splitmix64.
  static Rng derive(std::uint64_t seed, std::uint64_t index);

  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi);  // inclusive
  /// Uniform in [0, 1) with every one of the prec mantissa bits random.
  Real real01(Precision prec);
  /// Real and imaginary parts uniform in [-half_width, half_width), full precision.
  Complex complex_in_box(double half_width, Precision prec);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace expclose
