#include "expclose/mp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace expclose {

Real::Real(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(double value, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const mpq_class& value, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const mpz_class& value, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::parse(std::string_view text, Precision prec) {
  Real r(prec);
  std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
  return r;
}

Real Real::pow2(long exponent, Precision prec) {
  Real r(prec);
  mpfr_set_ui_2exp(r.value_, 1, exponent, MPFR_RNDN);
  return r;
}

Real Real::pi(Precision prec) {
  Real r(prec);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

Real Real::with_precision(Precision prec) const {
  Real r(prec);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

mpz_class Real::round_to_integer() const {
  if (!is_finite()) throw std::domain_error("cannot round a non-finite value");
  Real t(precision());
  mpfr_round(t.value_, value_);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), t.value_, MPFR_RNDN);
  return z;
}

double Real::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, value_, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

namespace {

std::string format_decimal(mpfr_srcptr v, std::size_t digits) {
  if (mpfr_nan_p(v)) return "@nan@";
  if (mpfr_inf_p(v)) return mpfr_sgn(v) > 0 ? "@inf@" : "-@inf@";
  if (mpfr_zero_p(v)) return mpfr_signbit(v) ? "-0" : "0";
  mpfr_exp_t exponent = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exponent, 10, digits, v, MPFR_RNDN), mpfr_free_str);
  std::string mant(raw.get());
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  // mant is d1 d2 d3 ... with value 0.d1d2d3 * 10^exponent
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  const long e10 = static_cast<long>(exponent) - 1;
  if (e10 != 0) out += "e" + std::to_string(e10);
  return out;
}

}  // namespace

std::string Real::to_string() const { return format_decimal(value_, 0); }

std::string Real::to_string(std::size_t digits) const {
  return format_decimal(value_, std::max<std::size_t>(digits, 2));
}

#define EXPCLOSE_REAL_BINOP(op, fn)                                 \
  Real& Real::operator op##=(const Real& o) {                       \
    if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), MPFR_RNDN); \
    fn(value_, value_, o.value_, MPFR_RNDN);                        \
    return *this;                                                   \
  }                                                                 \
  Real operator op(const Real& a, const Real& b) {                  \
    Real r(std::max(a.precision(), b.precision()));                 \
    fn(r.value_, a.value_, b.value_, MPFR_RNDN);                    \
    return r;                                                       \
  }

EXPCLOSE_REAL_BINOP(+, mpfr_add)
EXPCLOSE_REAL_BINOP(-, mpfr_sub)
EXPCLOSE_REAL_BINOP(*, mpfr_mul)
EXPCLOSE_REAL_BINOP(/, mpfr_div)

#undef EXPCLOSE_REAL_BINOP

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.value_, a.value_, MPFR_RNDN);
  return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

namespace {

template <class Fn>
Real unary(const Real& x, Fn fn) {
  Real r(x.precision());
  fn(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }

Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& a, const Real& b) {
  Real r(std::max(a.precision(), b.precision()));
  mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }
Real min(const Real& a, const Real& b) { return (b < a) ? b : a; }

bool identical(const Real& a, const Real& b) {
  if (a.precision() != b.precision()) return false;
  if (mpfr_nan_p(a.raw()) || mpfr_nan_p(b.raw())) return mpfr_nan_p(a.raw()) && mpfr_nan_p(b.raw());
  return mpfr_equal_p(a.raw(), b.raw()) && mpfr_signbit(a.raw()) == mpfr_signbit(b.raw());
}

Complex::Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {
  const Precision p = std::max(re_.precision(), im_.precision());
  if (re_.precision() != p) re_ = re_.with_precision(p);
  if (im_.precision() != p) im_ = im_.with_precision(p);
}

Precision Complex::precision() const { return std::max(re_.precision(), im_.precision()); }

Complex Complex::with_precision(Precision prec) const {
  return {re_.with_precision(prec), im_.with_precision(prec)};
}

Real Complex::norm2() const { return re_ * re_ + im_ * im_; }
Real Complex::abs() const { return hypot(re_, im_); }

Real Complex::arg() const {
  Real a = atan2(im_, re_);
  // atan2(-0, x<0) yields -pi; the principal branch is (-pi, pi].
  if (a == -Real::pi(a.precision())) a = -a;
  return a;
}

Complex& Complex::operator+=(const Complex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real re = re_ * o.re_ - im_ * o.im_;
  Real im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  const Real d = o.norm2();
  Real re = (re_ * o.re_ + im_ * o.im_) / d;
  Real im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex& Complex::operator*=(const Real& o) {
  re_ *= o;
  im_ *= o;
  return *this;
}

Complex exp(const Complex& z) {
  const Real m = exp(z.re());
  return {m * cos(z.im()), m * sin(z.im())};
}

Complex log(const Complex& z) { return {log(z.abs()), z.arg()}; }

Complex pow(const Complex& z, std::uint64_t e) {
  Complex result(Real(1L, z.precision()), Real(0L, z.precision()));
  Complex base = z;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

Complex pow(const Complex& z, long e) {
  if (e >= 0) return pow(z, static_cast<std::uint64_t>(e));
  const Complex one(Real(1L, z.precision()), Real(0L, z.precision()));
  return one / pow(z, static_cast<std::uint64_t>(-e));
}

bool identical(const Complex& a, const Complex& b) {
  return identical(a.re(), b.re()) && identical(a.im(), b.im());
}

Rng Rng::derive(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  x ^= x >> 31U;
  return Rng(x);
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1U;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  // rejection sampling keeps the draw unbiased
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return lo + static_cast<std::int64_t>(v % span);
}

Real Rng::real01(Precision prec) {
  mpz_class bits = 0;
  const long words = (prec + 63) / 64;
  for (long w = 0; w < words; ++w) {
    bits <<= 64;
    const std::uint64_t draw = engine_();
    bits += mpz_class(static_cast<unsigned long>(draw >> 32U)) << 32;
    bits += mpz_class(static_cast<unsigned long>(draw & 0xFFFFFFFFULL));
  }
  Real r(bits, prec + 64 * words);
  mpfr_div_2ui(r.raw(), r.raw(), static_cast<unsigned long>(64 * words), MPFR_RNDN);
  return r.with_precision(prec);
}

Complex Rng::complex_in_box(double half_width, Precision prec) {
  const Real w(half_width, prec);
  const Real two(2L, prec);
  Real re = (real01(prec) * two - Real(1L, prec)) * w;
  Real im = (real01(prec) * two - Real(1L, prec)) * w;
  return {std::move(re), std::move(im)};
}

}  // namespace expclose
