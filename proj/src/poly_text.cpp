#include "expclose/poly_text.hpp"

#include "expclose/errors.hpp"

#include <cctype>
#include <limits>

namespace expclose {

std::vector<std::string> variety_variable_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
  return names;
}

std::vector<std::string> triangular_variable_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  names.emplace_back("u");
  return names;
}

std::string format_poly(const MultiPoly& p, const std::vector<std::string>& names) {
  if (names.size() != p.num_vars()) throw Error(ErrorKind::Arity, "format_poly: wrong number of variable names");
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (!out.empty()) out += " + ";
    out += sgn(c.im()) == 0 ? c.to_string() : "(" + c.to_string() + ")";
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      out += " * " + names[v];
      if (e[v] > 1) out += "^" + std::to_string(e[v]);
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& names) : text_(text), names_(names) {}

  MultiPoly parse() {
    MultiPoly p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, "polynomial '" + std::string(text_) + "' at column " + std::to_string(pos_ + 1) +
                                      ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expression() {
    MultiPoly acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const MultiPoly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        acc *= d.constant_term().inverse();
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > std::numeric_limits<std::uint32_t>::max()) fail("exponent too large");
      return pow(base, static_cast<unsigned>(e));
    }
    return base;
  }

  MultiPoly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      MultiPoly inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view ident = text_.substr(start, pos_ - start);
      for (std::size_t v = 0; v < names_.size(); ++v) {
        if (names_[v] == ident) return MultiPoly::variable(names_.size(), v);
      }
      if (ident == "i") return MultiPoly::constant(names_.size(), GaussianRational::i());
      pos_ = start;
      fail("unknown variable '" + std::string(ident) + "'");
    }
    fail("unexpected character '" + std::string(1, ch) + "'");
  }

  MultiPoly number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    // exponent part, only when followed by digits
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    const mpq_class value = parse_decimal_exact(text_.substr(start, pos_ - start));
    return MultiPoly::constant(names_.size(), GaussianRational(value));
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& names) {
  return Parser(text, names).parse();
}

GaussianRational parse_gaussian_rational(std::string_view text) {
  static const std::vector<std::string> kNoNames;
  const MultiPoly p = parse_poly(text, kNoNames);
  return p.constant_term();
}

}  // namespace expclose
