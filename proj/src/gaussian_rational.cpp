#include "expclose/gaussian_rational.hpp"

#include "expclose/errors.hpp"

#include <cctype>

namespace expclose {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::inverse() const {
  const mpq_class n = norm();
  if (sgn(n) == 0) throw std::domain_error("inverse of zero in Q(i)");
  return {re_ / n, -im_ / n};
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string out = re_.get_str();
  const bool unit = (abs(im_) == 1);
  if (sgn(im_) > 0) {
    out += unit ? "+i" : "+" + im_.get_str() + "*i";
  } else {
    out += unit ? "-i" : im_.get_str() + "*i";
  }
  return out;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

mpq_class parse_decimal_exact(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      seen_digit = true;
      if (seen_point) --scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw Error(ErrorKind::Parse, "malformed decimal '" + std::string(text) + "'");
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::string exp_text(text.substr(pos));
    if (exp_text.empty()) throw Error(ErrorKind::Parse, "malformed exponent in '" + std::string(text) + "'");
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "malformed exponent in '" + std::string(text) + "'");
    }
    if (used != exp_text.size()) throw Error(ErrorKind::Parse, "trailing characters in '" + std::string(text) + "'");
    scale += e;
    pos = text.size();
  }
  if (pos != text.size()) throw Error(ErrorKind::Parse, "trailing characters in '" + std::string(text) + "'");
  mpz_class num(digits, 10);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  mpq_class value = scale < 0 ? mpq_class(num, pow10) : mpq_class(num * pow10);
  value.canonicalize();
  return negative ? mpq_class(-value) : value;
}

}  // namespace expclose
