#include "expclose/triangularize.hpp"

#include "expclose/errors.hpp"

#include <algorithm>
#include <map>

namespace expclose {

std::vector<std::uint32_t> TriangularSystem::degrees_in_u() const {
  std::vector<std::uint32_t> d;
  for (const MultiPoly& p : polys) d.push_back(p.degree_in(n));
  return d;
}

void TriangularSystem::validate() const {
  if (n == 0) throw Error(ErrorKind::Arity, "triangular system needs n >= 1");
  if (polys.size() != n) {
    throw Error(ErrorKind::Arity, "triangular system needs exactly n = " + std::to_string(n) + " polynomials");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const MultiPoly& p = polys[i];
    const std::string label = "p" + std::to_string(i + 1);
    if (p.num_vars() != n + 1) throw Error(ErrorKind::Arity, label + " must have n+1 variables");
    if (p.degree_in(n) == 0) throw Error(ErrorKind::DegreeZero, label + " has degree 0 in u");
    if (p.term_count() == 1 && p.total_degree() == 1) {
      throw Error(ErrorKind::DegreeZero, label + " is a constant multiple of u");
    }
    if (gcd(p, p.partial(n)).involves(n)) throw Error(ErrorKind::NotDivisible, label + " is not square-free in u");
  }
}

std::uint64_t fiber_bound(const TriangularSystem& t) {
  std::uint64_t b = 1;
  for (std::uint32_t d : t.degrees_in_u()) b *= d;
  return b;
}

Real relative_residual(const MultiPoly& p, const std::vector<Complex>& point) {
  const Precision prec = point.front().precision();
  return p.eval(point).abs() / max(Real(1L, prec), p.magnitude_at(point));
}

namespace {

bool involves_any(const MultiPoly& p, std::size_t from, std::size_t to) {
  for (std::size_t v = from; v < to; ++v)
    if (p.involves(v)) return true;
  return false;
}

// Removes factors that cannot vanish on the component: polynomials in x
// alone (the first n variables) and powers of y variables.
MultiPoly clean(const MultiPoly& p, std::size_t n) {
  if (p.is_zero()) return p;
  const std::size_t nv = p.num_vars();
  Exponents low = p.terms().begin()->first;
  for (const auto& [e, c] : p.terms())
    for (std::size_t v = n; v < nv; ++v) low[v] = std::min(low[v], e[v]);
  MultiPoly::TermMap shifted;
  std::map<Exponents, MultiPoly::TermMap> groups;
  for (const auto& [e, c] : p.terms()) {
    Exponents s = e;
    Exponents ykey(nv, 0);
    Exponents xpart = e;
    for (std::size_t v = n; v < nv; ++v) {
      s[v] -= low[v];
      ykey[v] = s[v];
      xpart[v] = 0;
    }
    for (std::size_t v = 0; v < n; ++v) ykey[v] = 0;
    shifted.emplace(s, c);
    groups[ykey].emplace(xpart, c);
  }
  MultiPoly q(nv, shifted);
  MultiPoly content(nv);
  for (const auto& [key, terms] : groups) {
    content = gcd(content, MultiPoly(nv, terms));
    if (content.is_constant()) break;
  }
  if (!content.is_constant()) q = exact_divide(q, content);
  return q.monic();
}

// Polynomial in x1..xn, y_i written in variables x1..xn, u.
MultiPoly to_triangular(const MultiPoly& p, std::size_t n, std::size_t i) {
  MultiPoly::TermMap terms;
  for (const auto& [e, c] : p.terms()) {
    Exponents t(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) t[v] = e[v];
    t[n] = e[n + i];
    terms.emplace(std::move(t), c);
  }
  return MultiPoly(n + 1, terms);
}

// Polynomials in x and y_i obtained by eliminating every y_j, j != i, in
// ascending j: the lowest-degree polynomial in y_j is the pivot and is
// replaced by its resultants with the others.
std::vector<MultiPoly> eliminants(const ExpVariety& v, std::size_t i, const TriangularizeOptions& options) {
  const std::size_t n = v.n;
  std::vector<MultiPoly> current;
  for (const MultiPoly& g : v.generators) {
    MultiPoly c = clean(g, n);
    if (involves_any(c, n, 2 * n)) current.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const std::size_t yj = n + j;
    std::vector<MultiPoly> with;
    std::vector<MultiPoly> next;
    for (MultiPoly& p : current) (p.involves(yj) ? with : next).push_back(std::move(p));
    std::stable_sort(with.begin(), with.end(),
                     [&](const MultiPoly& a, const MultiPoly& b) { return a.degree_in(yj) < b.degree_in(yj); });
    for (std::size_t k = 1; k < with.size(); ++k) {
      MultiPoly r(2 * n);
      try {
        r = clean(resultant(with.front(), with[k], yj, options.term_limit), n);
      } catch (const Error& e) {
        throw e.in_stage("triangularize");
      }
      if (r.is_zero() || !involves_any(r, n, 2 * n)) continue;
      if (std::find(next.begin(), next.end(), r) == next.end()) next.push_back(std::move(r));
    }
    current = std::move(next);
  }
  std::vector<MultiPoly> out;
  for (MultiPoly& p : current)
    if (p.involves(n + i)) out.push_back(std::move(p));
  if (out.empty()) {
    throw Error(ErrorKind::EliminationCollapsed,
                "eliminating the other y variables left no polynomial in y" + std::to_string(i + 1), "triangularize");
  }
  return out;
}

}  // namespace

TriangularSystem triangularize(const ExpVariety& v, const SamplePoint& witness, Precision precision,
                               const TriangularizeOptions& options) {
  v.validate();
  const std::size_t n = v.n;
  if (witness.coords.size() != 2 * n) throw Error(ErrorKind::Arity, "witness must have 2n coordinates", "triangularize");
  std::vector<Complex> w;
  for (const Complex& c : witness.coords) w.push_back(c.with_precision(precision));
  const Real cutoff = rank_cutoff(precision);

  TriangularSystem out;
  out.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t var = n + i;
    const std::vector<MultiPoly> candidates = eliminants(v, i, options);

    std::vector<MultiPoly> vanishing;
    for (const MultiPoly& c : candidates)
      if (relative_residual(c, w) <= cutoff) vanishing.push_back(c);
    if (vanishing.empty()) {
      throw Error(ErrorKind::AllFactorsExtraneous,
                  "no eliminant for y" + std::to_string(i + 1) + " vanishes at the witness", "triangularize");
    }
    MultiPoly g(2 * n);
    for (const MultiPoly& c : vanishing) g = gcd(g, c);
    if (!g.involves(var) || relative_residual(g, w) > cutoff) {
      g = *std::min_element(vanishing.begin(), vanishing.end(), [&](const MultiPoly& a, const MultiPoly& b) {
        return a.degree_in(var) < b.degree_in(var);
      });
    }

    MultiPoly kept = MultiPoly::constant(2 * n, 1);
    bool any = false;
    for (const MultiPoly& f : square_free_factors_in(g, var)) {
      if (!f.involves(var)) continue;
      if (f.term_count() == 1 && f.total_degree() == 1) continue;  // c * y_i
      if (relative_residual(f, w) <= cutoff) {
        kept = kept * f;
        any = true;
      }
    }
    if (!any) {
      throw Error(ErrorKind::AllFactorsExtraneous,
                  "every square-free factor for y" + std::to_string(i + 1) + " is extraneous at the witness",
                  "triangularize");
    }
    out.polys.push_back(to_triangular(kept.monic_in(var), n, i));
  }
  return out;
}

}  // namespace expclose
