#include "expclose/multipoly.hpp"

#include "expclose/errors.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace expclose {

MultiPoly::MultiPoly(std::size_t num_vars) : num_vars_(num_vars) {}

MultiPoly::MultiPoly(std::size_t num_vars, const TermMap& terms) : num_vars_(num_vars) {
  for (const auto& [exps, c] : terms) {
    if (exps.size() != num_vars_) {
      throw Error(ErrorKind::Arity, "exponent vector of length " + std::to_string(exps.size()) +
                                        " in a polynomial of " + std::to_string(num_vars_) + " variables");
    }
    if (!c.is_zero()) terms_.emplace(exps, c);
  }
}

MultiPoly MultiPoly::constant(std::size_t num_vars, const GaussianRational& c) {
  MultiPoly p(num_vars);
  if (!c.is_zero()) p.terms_.emplace(Exponents(num_vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw Error(ErrorKind::Arity, "variable index out of range");
  Exponents e(num_vars, 0);
  e[index] = 1;
  return monomial(e, 1);
}

MultiPoly MultiPoly::monomial(const Exponents& exps, const GaussianRational& c) {
  MultiPoly p(exps.size());
  if (!c.is_zero()) p.terms_.emplace(exps, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                            [](std::uint32_t e) { return e == 0; }));
}

GaussianRational MultiPoly::constant_term() const {
  const auto it = terms_.find(Exponents(num_vars_, 0));
  return it == terms_.end() ? GaussianRational() : it->second;
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const {
  if (var >= num_vars_) throw Error(ErrorKind::Arity, "variable index out of range");
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

std::uint32_t MultiPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0U));
  return d;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  std::vector<MultiPoly> out(degree_in(var) + 1, MultiPoly(num_vars_));
  for (const auto& [e, c] : terms_) {
    Exponents stripped = e;
    stripped[var] = 0;
    out[e[var]].terms_.emplace(std::move(stripped), c);
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& coeffs, std::size_t var) {
  if (coeffs.empty()) throw Error(ErrorKind::Arity, "empty coefficient list");
  MultiPoly p(coeffs.front().num_vars());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& [e, c] : coeffs[k].terms_) {
      Exponents shifted = e;
      shifted[var] += static_cast<std::uint32_t>(k);
      p += monomial(shifted, c);
    }
  }
  return p;
}

MultiPoly MultiPoly::leading_coefficient_in(std::size_t var) const {
  if (is_zero()) return MultiPoly(num_vars_);
  return coefficients_in(var).back();
}

MultiPoly MultiPoly::partial(std::size_t var) const {
  if (var >= num_vars_) throw Error(ErrorKind::Arity, "variable index out of range");
  MultiPoly d(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents lowered = e;
    --lowered[var];
    d.terms_.emplace(std::move(lowered), c * GaussianRational(static_cast<long>(e[var])));
  }
  return d;
}

MultiPoly MultiPoly::remap(std::size_t new_num_vars, std::span<const std::size_t> mapping) const {
  if (mapping.size() != num_vars_) throw Error(ErrorKind::Arity, "remap: mapping length mismatch");
  std::vector<bool> used(new_num_vars, false);
  for (std::size_t t : mapping) {
    if (t >= new_num_vars || used[t]) throw Error(ErrorKind::Arity, "remap: mapping not injective");
    used[t] = true;
  }
  MultiPoly p(new_num_vars);
  for (const auto& [e, c] : terms_) {
    Exponents ne(new_num_vars, 0);
    for (std::size_t j = 0; j < num_vars_; ++j) ne[mapping[j]] = e[j];
    p.terms_.emplace(std::move(ne), c);
  }
  return p;
}

const GaussianRational& MultiPoly::lex_leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
  return terms_.rbegin()->second;
}

MultiPoly MultiPoly::monic_in(std::size_t var) const {
  if (is_zero()) return *this;
  return *this * leading_coefficient_in(var).lex_leading_coefficient().inverse();
}

MultiPoly MultiPoly::monic() const {
  if (is_zero()) return *this;
  return *this * lex_leading_coefficient().inverse();
}

namespace {

std::vector<std::vector<Complex>> power_table(const MultiPoly& p, std::span<const Complex> point) {
  std::vector<std::vector<Complex>> powers(p.num_vars());
  for (std::size_t v = 0; v < p.num_vars(); ++v) {
    const std::uint32_t d = p.degree_in(v);
    const Precision prec = point[v].precision();
    powers[v].reserve(d + 1);
    powers[v].emplace_back(Real(1L, prec), Real(0L, prec));
    for (std::uint32_t k = 1; k <= d; ++k) powers[v].push_back(powers[v].back() * point[v]);
  }
  return powers;
}

}  // namespace

Complex MultiPoly::eval(std::span<const Complex> point) const {
  if (point.size() != num_vars_) {
    throw Error(ErrorKind::Arity, "evaluation point has " + std::to_string(point.size()) +
                                      " coordinates, polynomial has " + std::to_string(num_vars_) + " variables");
  }
  Precision prec = 53;
  for (const Complex& c : point) prec = std::max(prec, c.precision());
  const auto powers = power_table(*this, point);
  Complex sum(prec);
  for (const auto& [e, c] : terms_) {
    Complex term = c.to_complex(prec);
    for (std::size_t v = 0; v < num_vars_; ++v) {
      if (e[v] != 0) term *= powers[v][e[v]];
    }
    sum += term;
  }
  return sum;
}

GaussianRational MultiPoly::eval_exact(std::span<const GaussianRational> point) const {
  if (point.size() != num_vars_) throw Error(ErrorKind::Arity, "evaluation point arity mismatch");
  GaussianRational sum;
  for (const auto& [e, c] : terms_) {
    GaussianRational term = c;
    for (std::size_t v = 0; v < num_vars_; ++v) {
      for (std::uint32_t k = 0; k < e[v]; ++k) term *= point[v];
    }
    sum += term;
  }
  return sum;
}

Real MultiPoly::magnitude_at(std::span<const Complex> point) const {
  if (point.size() != num_vars_) throw Error(ErrorKind::Arity, "evaluation point arity mismatch");
  Precision prec = 53;
  for (const Complex& c : point) prec = std::max(prec, c.precision());
  std::vector<Complex> absolute;
  absolute.reserve(point.size());
  for (const Complex& c : point) absolute.emplace_back(c.abs(), Real(0L, prec));
  const auto powers = power_table(*this, absolute);
  Real sum(0L, prec);
  for (const auto& [e, c] : terms_) {
    Real term = c.to_complex(prec).abs();
    for (std::size_t v = 0; v < num_vars_; ++v) {
      if (e[v] != 0) term *= powers[v][e[v]].re();
    }
    sum += term;
  }
  return sum;
}

void MultiPoly::check_arity(const MultiPoly& o) const {
  if (o.num_vars_ != num_vars_) {
    throw Error(ErrorKind::Arity, "polynomials over " + std::to_string(num_vars_) + " and " +
                                      std::to_string(o.num_vars_) + " variables");
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_arity(o);
  for (const auto& [e, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_arity(o);
  for (const auto& [e, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(e, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly& MultiPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_arity(b);
  MultiPoly out(a.num_vars_);
  Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      auto [it, inserted] = out.terms_.try_emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

MultiPoly operator-(const MultiPoly& a) { return a * GaussianRational(-1); }

MultiPoly pow(const MultiPoly& p, unsigned e) {
  MultiPoly result = MultiPoly::constant(p.num_vars(), 1);
  MultiPoly base = p;
  while (e != 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

MultiPoly exact_divide(const MultiPoly& p, const MultiPoly& d) {
  if (d.is_zero()) throw Error(ErrorKind::NotDivisible, "division by the zero polynomial");
  if (p.num_vars() != d.num_vars()) throw Error(ErrorKind::Arity, "exact_divide: arity mismatch");
  const auto& [lead_exp, lead_coeff] = *d.terms().rbegin();
  const GaussianRational lead_inv = lead_coeff.inverse();
  MultiPoly quotient(p.num_vars());
  MultiPoly rest = p;
  while (!rest.is_zero()) {
    const auto& [re, rc] = *rest.terms().rbegin();
    Exponents shift(re.size());
    for (std::size_t v = 0; v < re.size(); ++v) {
      if (re[v] < lead_exp[v]) throw Error(ErrorKind::NotDivisible, "polynomial division is not exact");
      shift[v] = re[v] - lead_exp[v];
    }
    const MultiPoly t = MultiPoly::monomial(shift, rc * lead_inv);
    quotient += t;
    rest -= t * d;
  }
  return quotient;
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  if (b.is_zero()) throw Error(ErrorKind::NotDivisible, "pseudo-remainder by zero");
  const std::uint32_t db = b.degree_in(var);
  const MultiPoly lc = b.leading_coefficient_in(var);
  MultiPoly r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const std::uint32_t dr = r.degree_in(var);
    Exponents shift(a.num_vars(), 0);
    shift[var] = dr - db;
    r = lc * r - r.leading_coefficient_in(var) * MultiPoly::monomial(shift, 1) * b;
  }
  return r;
}

namespace {

// Highest-index variable occurring in p, or num_vars if p is constant.
std::size_t main_variable(const MultiPoly& p) {
  for (std::size_t v = p.num_vars(); v-- > 0;) {
    if (p.involves(v)) return v;
  }
  return p.num_vars();
}

MultiPoly gcd_of_list(const std::vector<MultiPoly>& polys, std::size_t num_vars) {
  MultiPoly g(num_vars);
  for (const MultiPoly& c : polys) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

}  // namespace

MultiPoly content_in(const MultiPoly& p, std::size_t var) {
  if (p.is_zero()) return p;
  return gcd_of_list(p.coefficients_in(var), p.num_vars());
}

MultiPoly primitive_part_in(const MultiPoly& p, std::size_t var) {
  if (p.is_zero()) return p;
  return exact_divide(p, content_in(p, var));
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.num_vars() != b.num_vars()) throw Error(ErrorKind::Arity, "gcd: arity mismatch");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const std::size_t n = a.num_vars();
  const std::size_t va = main_variable(a);
  const std::size_t vb = main_variable(b);
  if (va == n || vb == n) return MultiPoly::constant(n, 1);
  const std::size_t v = std::max(va, vb);
  if (!a.involves(v)) return gcd(a, content_in(b, v));
  if (!b.involves(v)) return gcd(content_in(a, v), b);

  const MultiPoly ca = content_in(a, v);
  const MultiPoly cb = content_in(b, v);
  const MultiPoly g0 = gcd(ca, cb);
  MultiPoly pa = exact_divide(a, ca);
  MultiPoly pb = exact_divide(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  MultiPoly h(n);
  while (true) {
    const MultiPoly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) {
      h = pb;
      break;
    }
    if (!r.involves(v)) {
      h = MultiPoly::constant(n, 1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part_in(r, v);
  }
  return (primitive_part_in(h, v) * g0).monic();
}

std::vector<MultiPoly> square_free_factors_in(const MultiPoly& p, std::size_t var) {
  std::vector<MultiPoly> factors;
  if (p.is_zero() || !p.involves(var)) return factors;
  const MultiPoly a = primitive_part_in(p, var);
  const MultiPoly b = a.partial(var);
  const MultiPoly c = gcd(a, b);
  MultiPoly w = exact_divide(a, c);
  MultiPoly y = exact_divide(b, c);
  MultiPoly z = y - w.partial(var);
  while (w.involves(var)) {
    const MultiPoly g = gcd(w, z);
    factors.push_back(g.involves(var) ? g.monic_in(var) : MultiPoly::constant(p.num_vars(), 1));
    w = exact_divide(w, g);
    y = exact_divide(z, g);
    z = y - w.partial(var);
  }
  return factors;
}

MultiPoly square_free_part_in(const MultiPoly& p, std::size_t var) {
  MultiPoly out = MultiPoly::constant(p.num_vars(), 1);
  for (const MultiPoly& f : square_free_factors_in(p, var)) out = out * f;
  return out.monic_in(var);
}

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var, std::size_t term_limit) {
  if (p.num_vars() != q.num_vars()) throw Error(ErrorKind::Arity, "resultant: arity mismatch");
  const std::uint32_t dp = p.is_zero() ? 0 : p.degree_in(var);
  const std::uint32_t dq = q.is_zero() ? 0 : q.degree_in(var);
  if (dp == 0 || dq == 0) {
    throw Error(ErrorKind::DegreeZero, "resultant needs positive degree in the eliminated variable");
  }
  const std::size_t nv = p.num_vars();
  const std::size_t size = dp + dq;
  const auto pc = p.coefficients_in(var);
  const auto qc = q.coefficients_in(var);
  std::vector<std::vector<MultiPoly>> m(size, std::vector<MultiPoly>(size, MultiPoly(nv)));
  for (std::size_t r = 0; r < dq; ++r) {
    for (std::uint32_t k = 0; k <= dp; ++k) m[r][r + (dp - k)] = pc[k];
  }
  for (std::size_t r = 0; r < dp; ++r) {
    for (std::uint32_t k = 0; k <= dq; ++k) m[dq + r][r + (dq - k)] = qc[k];
  }

  bool negate = false;
  MultiPoly previous = MultiPoly::constant(nv, 1);
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < size && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == size) return MultiPoly(nv);
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        m[i][j] = exact_divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], previous);
        if (m[i][j].term_count() > term_limit) {
          throw Error(ErrorKind::TermLimit, "resultant intermediate exceeds " + std::to_string(term_limit) + " terms");
        }
      }
    }
    previous = m[k][k];
  }
  MultiPoly det = m[size - 1][size - 1];
  return negate ? -det : det;
}

}  // namespace expclose
