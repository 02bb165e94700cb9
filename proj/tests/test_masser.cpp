#include "expclose/errors.hpp"
#include "expclose/masser.hpp"
#include "expclose/poly_text.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace expclose;

namespace {

constexpr Precision kPrec = 256;

std::vector<MultiPoly> polys(std::size_t n, std::initializer_list<const char*> texts) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  std::vector<MultiPoly> out;
  for (const char* t : texts) out.push_back(parse_poly(t, names));
  return out;
}

TriangularSystem tri(std::size_t n, std::initializer_list<const char*> texts) {
  TriangularSystem t;
  t.n = n;
  for (const char* p : texts) t.polys.push_back(parse_poly(p, triangular_variable_names(n)));
  return t;
}

ExpVariety variety(std::size_t n, std::initializer_list<const char*> gens) {
  ExpVariety v;
  v.n = n;
  for (const char* g : gens) v.generators.push_back(parse_poly(g, variety_variable_names(n)));
  return v;
}

SolveOptions opts(Precision p = kPrec) {
  SolveOptions o;
  o.precision = p;
  return o;
}

Complex parse_c(const char* re, const char* im, Precision p) { return {Real::parse(re, p), Real::parse(im, p)}; }

const Real& e30() {
  static const Real v = Real::parse("1e-30", kPrec);
  return v;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Arity;
}

}  // namespace

TEST_CASE("e^z = z from k = 1 against the Newton oracle") {
  const auto s = solve_masser_poly(polys(1, {"x1"}), Seed{{1}, {}}, opts());
  const Complex ref = oracle::exp_equals_z(1, kPrec);
  CHECK(oracle::agreeing_digits(s.z[0], ref) >= 40);
  CHECK((exp(s.z[0]) - s.z[0]).abs() <= e30());
  CHECK(s.residual_exp <= s.tolerance);
  // frozen reference value
  const Complex frozen = parse_c("2.06227772959828388497848672000804595128359230670459",
                                 "7.58863117847251262256892395410758438301347367199285636", kPrec);
  CHECK(oracle::agreeing_digits(s.z[0], frozen) >= 40);
  CHECK(abs(s.z[0].im() - Real::pi(kPrec) * Real(2L, kPrec)) < Real::pi(kPrec));
}

TEST_CASE("constant right-hand side gives 2 pi i k") {
  const auto s = solve_masser_poly(polys(1, {"1"}), Seed{{3}, {}}, opts());
  CHECK((s.z[0] - oracle::two_pi_i(3, kPrec)).abs() <= Real::pow2(-250, kPrec));
}

TEST_CASE("swap system against a fixed-point oracle at doubled precision") {
  const auto s = solve_masser_poly(polys(2, {"x2", "x1"}), Seed{{1, -1}, {}}, opts());
  CHECK((exp(s.z[0]) - s.z[1]).abs() <= e30());
  CHECK((exp(s.z[1]) - s.z[0]).abs() <= e30());
  CHECK((s.z[0] - s.z[1]).abs() > Real(1L, kPrec));
  const Precision p2 = 2 * kPrec;
  Complex a = oracle::two_pi_i(1, p2);
  Complex b = oracle::two_pi_i(-1, p2);
  for (int k = 0; k < 2000; ++k) {
    const Complex na = oracle::two_pi_i(1, p2) + log(b);
    const Complex nb = oracle::two_pi_i(-1, p2) + log(a);
    a = na;
    b = nb;
  }
  CHECK(oracle::agreeing_digits(s.z[0], a) >= 60);
  CHECK(oracle::agreeing_digits(s.z[1], b) >= 60);
}

TEST_CASE("algebraic solver matches the polynomial solver on a linear system") {
  const auto sp = solve_masser_poly(polys(2, {"x2", "x1"}), Seed{{1, -1}, {}}, opts());
  const auto sa = solve_masser_algebraic(tri(2, {"u - x2", "u - x1"}), Seed{{1, -1}, {0, 0}}, opts());
  for (int i = 0; i < 2; ++i) CHECK((sp.z[i] - sa.z[i]).abs() <= Real::pow2(-200, kPrec));
}

TEST_CASE("square-root branch: e^{2z} = z") {
  const auto s = solve_masser_algebraic(tri(1, {"u^2 - x1"}), Seed{{1}, {0}}, opts());
  const Complex z = s.z[0];
  CHECK((exp(z * Real(2L, kPrec)) - z).abs() <= e30());
  // oracle: Newton on e^{2z} - z from the first iterate on branch 0, 2 pi i + Log(-sqrt(2 pi i))
  const Complex two(Real(2L, kPrec), Real(0L, kPrec));
  const Complex one(Real(1L, kPrec), Real(0L, kPrec));
  const Complex w = oracle::two_pi_i(1, kPrec);
  const Complex root = exp(log(w) * Real(0.5, kPrec));
  const Complex start = w + log(-root);
  const Complex ref = oracle::newton([&](const Complex& x) { return exp(x * Real(2L, kPrec)) - x; },
                                     [&](const Complex& x) { return two * exp(x * Real(2L, kPrec)) - one; }, start);
  CHECK(oracle::agreeing_digits(z, ref) >= 60);
  const Complex frozen = parse_c("0.680374712204286702302526454983947477294933007525702784232453",
                                 "3.83929453990829682550132722932271946005777220475741496778685", kPrec);
  CHECK(oracle::agreeing_digits(z, frozen) >= 55);
  // branch 1 is the other root in the same strip
  const auto s1 = solve_masser_algebraic(tri(1, {"u^2 - x1"}), Seed{{1}, {1}}, opts());
  CHECK((exp(s1.z[0] * Real(2L, kPrec)) - s1.z[0]).abs() <= e30());
  CHECK((s1.z[0] - z).abs() > Real(1L, kPrec));
}

TEST_CASE("e^z = z + 1 from k = 1") {
  const auto s = solve_masser_algebraic(tri(1, {"u - x1 - 1"}), Seed{{1}, {0}}, opts());
  const Complex one(Real(1L, kPrec), Real(0L, kPrec));
  CHECK((exp(s.z[0]) - s.z[0] - one).abs() <= e30());
  CHECK_FALSE(s.z[0].is_zero());
  const Complex shift = oracle::two_pi_i(1, kPrec);
  const Complex ref = oracle::newton([&](const Complex& x) { return x - log(x + one) - shift; },
                                     [&](const Complex& x) { return one - one / (x + one); }, shift);
  CHECK(oracle::agreeing_digits(s.z[0], ref) >= 60);
}

TEST_CASE("seed validation and singular right-hand sides") {
  CHECK(kind_of([] { (void)solve_masser_poly(polys(1, {"x1"}), Seed{{0}, {}}, opts()); }) == ErrorKind::InvalidSeed);
  CHECK(kind_of([] { (void)solve_masser_poly(polys(1, {"x1"}), Seed{{1, 2}, {}}, opts()); }) == ErrorKind::InvalidSeed);
  CHECK(kind_of([] { (void)solve_masser_algebraic(tri(1, {"u^2 - x1"}), Seed{{1}, {2}}, opts()); }) ==
        ErrorKind::InvalidSeed);
  // P vanishes at the start point
  CHECK(kind_of([] {
          SolveOptions o = opts();
          o.start = std::vector<Complex>{Complex(kPrec)};
          (void)solve_masser_poly(polys(1, {"x1"}), Seed{{1}, {}}, o);
        }) == ErrorKind::LogSingularity);
  CHECK(kind_of([] {
          SolveOptions o = opts();
          o.max_iter = 2;
          (void)solve_masser_poly(polys(1, {"x1"}), Seed{{1}, {}}, o);
        }) == ErrorKind::NoConvergence);
}

TEST_CASE("certificate honesty and precision monotonicity") {
  const std::vector<SolutionPoint> sols{
      solve_masser_poly(polys(1, {"x1"}), Seed{{1}, {}}, opts()),
      solve_masser_poly(polys(2, {"x2", "x1"}), Seed{{1, -1}, {}}, opts()),
      solve_masser_algebraic(tri(1, {"u^2 - x1"}), Seed{{1}, {0}}, opts()),
      solve_masser_algebraic(tri(1, {"u - x1 - 1"}), Seed{{1}, {0}}, opts())};
  for (const auto& s : sols) {
    Real rexp(0L, kPrec);
    for (std::size_t i = 0; i < s.z.size(); ++i) rexp = max(rexp, (exp(s.z[i]) - s.y[i]).abs());
    CHECK(rexp <= s.residual_exp);
    CHECK(s.residual_exp <= s.tolerance);
    CHECK(s.residual_var <= s.tolerance);
    for (const auto& y : s.y) CHECK_FALSE(y.is_zero());
  }
  // restart from the returned point at doubled precision
  {
    SolveOptions o = opts(2 * kPrec);
    o.start = sols[0].z;
    const auto r = solve_masser_poly(polys(1, {"x1"}), Seed{{1}, {}}, o);
    CHECK(r.residual_exp < sols[0].residual_exp);
  }
  {
    SolveOptions o = opts(2 * kPrec);
    o.start = sols[2].z;
    o.start_y = sols[2].y;
    const auto r = solve_masser_algebraic(tri(1, {"u^2 - x1"}), Seed{{1}, {0}}, o);
    CHECK(r.residual_exp < sols[2].residual_exp);
    CHECK((r.z[0] - sols[2].z[0]).abs() <= sols[2].tolerance);
  }
}

TEST_CASE("seed injectivity and imaginary strip") {
  std::vector<Complex> zs;
  for (long k = 1; k <= 6; ++k) {
    const auto s = solve_masser_poly(polys(1, {"x1"}), Seed{{k}, {}}, opts());
    CHECK(abs(s.z[0].im() - Real::pi(kPrec) * Real(2L * k, kPrec)) < Real::pi(kPrec));
    for (const Complex& prev : zs) CHECK(abs(prev.im() - s.z[0].im()) >= Real(1L, kPrec));
    zs.push_back(s.z[0]);
  }
}

TEST_CASE("determinism: identical inputs give bit-identical output") {
  const auto a = solve_masser_algebraic(tri(1, {"u^2 - x1"}), Seed{{2}, {1}}, opts());
  const auto b = solve_masser_algebraic(tri(1, {"u^2 - x1"}), Seed{{2}, {1}}, opts());
  CHECK(identical(a.z[0], b.z[0]));
  CHECK(identical(a.y[0], b.y[0]));
  CHECK(identical(a.residual_exp, b.residual_exp));
  CHECK(a.stage_log == b.stage_log);
}

TEST_CASE("solve on a variety") {
  VarietySolveOptions o;
  const auto s = solve_on_variety(variety(1, {"y1 - x1"}), Seed{{1}, {}}, o);
  CHECK(oracle::agreeing_digits(s.z[0], oracle::exp_equals_z(1, kPrec)) >= 40);
  const auto w = solve_on_variety(variety(2, {"y1 - x2", "y2 - x1"}), Seed{{1, -1}, {}}, o);
  const auto sp = solve_masser_poly(polys(2, {"x2", "x1"}), Seed{{1, -1}, {}}, opts());
  CHECK((w.z[0] - sp.z[0]).abs() <= Real::pow2(-200, kPrec));
  // y1 = 2: the first projection is dominant, the second is not
  const auto c = solve_on_variety(variety(1, {"y1 - 2"}), Seed{{1}, {}}, o);
  CHECK((exp(c.z[0]) - Complex(2.0, 0.0, kPrec)).abs() <= c.tolerance);
  o.require_both_dominant = true;
  CHECK(kind_of([&] { (void)solve_on_variety(variety(1, {"y1 - 2"}), Seed{{1}, {}}, o); }) ==
        ErrorKind::DominanceHypothesis);
}
