#include "expclose/errors.hpp"
#include "expclose/poly_text.hpp"
#include "expclose/roots.hpp"
#include "expclose/triangularize.hpp"

#include <doctest.h>

using namespace expclose;

namespace {

constexpr Precision kPrec = 256;

ExpVariety make(std::size_t n, std::initializer_list<const char*> gens) {
  ExpVariety v;
  v.n = n;
  for (const char* g : gens) v.generators.push_back(parse_poly(g, variety_variable_names(n)));
  return v;
}

TriangularSystem tri(std::size_t n, std::initializer_list<const char*> polys) {
  TriangularSystem t;
  t.n = n;
  for (const char* p : polys) t.polys.push_back(parse_poly(p, triangular_variable_names(n)));
  return t;
}

TriangularSystem run(const ExpVariety& v, std::uint64_t seed = 0) {
  return triangularize(v, sample_point(v, seed, kPrec), kPrec);
}

// coefficients of p(x, u) in u at fixed x
std::vector<Complex> u_coefficients(const MultiPoly& p, const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  std::vector<Complex> point = x;
  point.emplace_back(kPrec);
  std::vector<Complex> out;
  for (const MultiPoly& c : p.coefficients_in(n)) out.push_back(c.eval(point));
  return out;
}

}  // namespace

TEST_CASE("already triangular swap system") {
  const auto t = run(make(2, {"y1 - x2", "y2 - x1"}));
  CHECK(t == tri(2, {"u - x2", "u - x1"}));
  CHECK(fiber_bound(t) == 1);
}

TEST_CASE("elimination through a resultant") {
  const auto t = run(make(2, {"y1*y2 - 1", "y1 - x1"}));
  // oracle: res_{y1}(y1 y2 - 1, y1 - x1) = det [[y2, -1], [1, -x1]] = 1 - x1 y2
  CHECK(t == tri(2, {"u - x1", "x1*u - 1"}));
}

TEST_CASE("single generator") {
  const auto t = run(make(1, {"y1^2 - x1"}));
  CHECK(t == tri(1, {"u^2 - x1"}));
  CHECK(fiber_bound(t) == 2);
}

TEST_CASE("fiber bound examples") {
  CHECK(fiber_bound(tri(2, {"u - x2", "u - x1"})) == 1);
  CHECK(fiber_bound(tri(1, {"u^2 - x1"})) == 2);
  CHECK(fiber_bound(tri(2, {"u^3 + x1*u + 1", "u^2 - x2"})) == 6);
}

TEST_CASE("validation rejects malformed systems") {
  CHECK_THROWS_AS(tri(1, {"3*u"}).validate(), Error);
  CHECK_THROWS_AS(tri(1, {"x1 + 1"}).validate(), Error);
  CHECK_THROWS_AS(tri(1, {"(u - x1)^2"}).validate(), Error);
  CHECK_NOTHROW(tri(2, {"u^3 + x1*u + 1", "u^2 - x2"}).validate());
}

TEST_CASE("collapsed elimination and extraneous witness are distinct errors") {
  try {
    (void)run(make(2, {"y1*y2 - 1"}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EliminationCollapsed);
    CHECK(e.stage() == "triangularize");
  }
  const auto v = make(1, {"y1^2 - x1"});
  SamplePoint off{{Complex(2.0, 0.0, kPrec), Complex(5.0, 0.0, kPrec)}, Real(0L, kPrec)};
  try {
    (void)triangularize(v, off, kPrec);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AllFactorsExtraneous);
  }
}

TEST_CASE("extraneous factors are filtered at the witness") {
  // y1 lies on the component y1 = x1 + 1 of (y1 - x1 - 1)(y1 + x1 - 3) = 0 for this witness
  const auto v = make(1, {"(y1 - x1 - 1)*(y1 + x1 - 3)", "(y1 - x1 - 1)*(x1 + 7)*y1"});
  const auto s = sample_point(v, 3, kPrec);
  const auto t = triangularize(v, s, kPrec);
  CHECK(t == tri(1, {"u - x1 - 1"}));
}

TEST_CASE("property: soundness and containment near the witness") {
  const std::vector<ExpVariety> systems{
      make(2, {"y1*y2 - 1", "y1 - x1"}), make(2, {"y1 - x2", "y2 - x1"}), make(1, {"y1^2 - x1"}),
      make(2, {"y1^2 - x1*y2", "y2 - x2 - 1"}), make(2, {"y1 + y2 - x1", "y1 - y2 - x2"})};
  const Real tol = Real::pow2(-128, kPrec);
  for (std::size_t s = 0; s < systems.size(); ++s) {
    const ExpVariety& v = systems[s];
    const auto witness = sample_point(v, 10 + s, kPrec);
    const auto t = triangularize(v, witness, kPrec);
    CHECK_NOTHROW(t.validate());
    const std::vector<Complex> wx(witness.coords.begin(), witness.coords.begin() + static_cast<long>(v.n));
    for (std::size_t i = 0; i < v.n; ++i) {
      std::vector<Complex> pt = wx;
      pt.push_back(witness.coords[v.n + i]);
      CHECK(t.polys[i].eval(pt).abs() <= tol * max(Real(1L, kPrec), t.polys[i].magnitude_at(pt)));
    }
    Rng rng(s);
    for (int k = 0; k < 10; ++k) {
      std::vector<Complex> x;
      for (const Complex& c : wx) x.push_back(c + rng.complex_in_box(1e-3, kPrec));
      std::vector<Complex> point = x;
      point.resize(2 * v.n, Complex(kPrec));
      for (std::size_t i = 0; i < v.n; ++i) {
        const auto roots = polynomial_roots(u_coefficients(t.polys[i], x));
        const Complex& target = witness.coords[v.n + i];
        const Complex* best = &roots.front();
        for (const Complex& r : roots)
          if ((r - target).abs() < (*best - target).abs()) best = &r;
        point[v.n + i] = *best;
      }
      for (const auto& g : v.generators) CHECK(g.eval(point).abs() <= tol * max(Real(1L, kPrec), g.magnitude_at(point)));
    }
  }
}

TEST_CASE("property: fiber finiteness against a discriminant oracle") {
  const auto t = tri(2, {"u^3 + x1*u + 1", "u^2 - x2"});
  Rng rng(8);
  const Real cutoff = rank_cutoff(kPrec);
  int tested = 0;
  while (tested < 10) {
    std::vector<Complex> x{rng.complex_in_box(3.0, kPrec), rng.complex_in_box(3.0, kPrec)};
    std::size_t count = 1;
    std::uint64_t oracle = 1;
    bool off_locus = true;
    for (std::size_t i = 0; i < 2; ++i) {
      const auto roots = polynomial_roots(u_coefficients(t.polys[i], x));
      if (min_root_separation(roots) < cutoff) off_locus = false;
      count *= roots.size();
      // nonzero discriminant means deg distinct roots
      std::vector<Complex> pt = x;
      pt.emplace_back(kPrec);
      const Complex disc = resultant(t.polys[i], t.polys[i].partial(2), 2).eval(pt);
      if (disc.abs() < cutoff) off_locus = false;
      oracle *= t.polys[i].degree_in(2);
      for (const Complex& r : roots) {
        pt.back() = r;
        CHECK(t.polys[i].eval(pt).abs() < cutoff);
      }
    }
    if (!off_locus) continue;
    ++tested;
    CHECK(count == oracle);
    CHECK(count >= 1);
    CHECK(count <= fiber_bound(t));
  }
}
