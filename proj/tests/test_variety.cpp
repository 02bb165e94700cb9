#include "expclose/errors.hpp"
#include "expclose/poly_text.hpp"
#include "expclose/variety.hpp"

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

ExpVariety graph(std::size_t n) {
  ExpVariety v;
  v.n = n;
  const auto names = variety_variable_names(n);
  for (std::size_t i = 0; i < n; ++i) v.generators.push_back(parse_poly(names[n + i] + " - " + names[i], names));
  return v;
}

// places the blocks of a (first) and b (second) side by side
ExpVariety product(const ExpVariety& a, const ExpVariety& b) {
  ExpVariety v;
  v.n = a.n + b.n;
  std::vector<std::size_t> map_a, map_b;
  for (std::size_t i = 0; i < a.n; ++i) map_a.push_back(i);
  for (std::size_t i = 0; i < a.n; ++i) map_a.push_back(v.n + i);
  for (std::size_t i = 0; i < b.n; ++i) map_b.push_back(a.n + i);
  for (std::size_t i = 0; i < b.n; ++i) map_b.push_back(v.n + a.n + i);
  for (const auto& g : a.generators) v.generators.push_back(g.remap(2 * v.n, map_a));
  for (const auto& g : b.generators) v.generators.push_back(g.remap(2 * v.n, map_b));
  return v;
}

const Real& tol() {
  static const Real t = Real::pow2(-128, kPrec);
  return t;
}

}  // namespace

TEST_CASE("sample on the graph of the identity") {
  const auto v = graph(1);
  const auto s = sample_point(v, 1, kPrec);
  CHECK(s.max_residual <= tol());
  CHECK((s.coords[0] - s.coords[1]).abs() <= tol());
  CHECK_FALSE(s.coords[0].is_zero());
}

TEST_CASE("sample on y1 = 2 and on the swap graph") {
  const auto s = sample_point(make(1, {"y1 - 2"}), 2, kPrec);
  CHECK((s.coords[1] - Complex(2.0, 0.0, kPrec)).abs() <= tol());
  const auto w = sample_point(make(2, {"y1 - x2", "y2 - x1"}), 3, kPrec);
  CHECK((w.coords[2] - w.coords[1]).abs() <= tol());
  CHECK((w.coords[3] - w.coords[0]).abs() <= tol());
}

TEST_CASE("stored residual bound re-checks by evaluation") {
  const auto v = make(2, {"y1*y2 - 1", "y1 - x1^2 + x2"});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = sample_point(v, seed, kPrec);
    for (const auto& g : v.generators) CHECK(g.eval(s.coords).abs() <= s.max_residual);
  }
}

TEST_CASE("points only on y = 0 are reported distinctly") {
  try {
    (void)sample_point(make(1, {"y1"}), 0, kPrec);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CoordinateHyperplane);
  }
}

TEST_CASE("dimension estimates") {
  for (std::size_t n = 1; n <= 3; ++n) CHECK(estimate_dimension(graph(n), 5, 0, kPrec) == static_cast<int>(n));
  CHECK(estimate_dimension(make(2, {"y1 - x2", "y2 - x1"}), 5, 0, kPrec) == 2);
  // one free parameter: x1 = x2 = y1 = t, y2 = 1
  CHECK(estimate_dimension(make(2, {"y1 - x1", "x1 - x2", "y2 - 1"}), 5, 0, kPrec) == 1);
}

TEST_CASE("dominance examples") {
  const auto id = graph(1);
  CHECK(check_dominant(id, Projection::First, 5, 0, kPrec));
  CHECK(check_dominant(id, Projection::Second, 5, 0, kPrec));
  const auto constant = make(1, {"y1 - 2"});
  CHECK(check_dominant(constant, Projection::First, 5, 0, kPrec));
  CHECK_FALSE(check_dominant(constant, Projection::Second, 5, 0, kPrec));
  const auto swap = make(2, {"y1 - x2", "y2 - x1"});
  CHECK(check_dominant(swap, Projection::First, 5, 0, kPrec));
  CHECK(check_dominant(swap, Projection::Second, 5, 0, kPrec));
  // oracle: the tangent space of the swap graph is spanned by (1,0,0,1) and
  // (0,1,1,0); both projections map this basis to a basis of Z^2
  const IntMatrix tangent{{1, 0, 0, 1}, {0, 1, 1, 0}};
  const IntMatrix first{{1, 0}, {0, 1}};
  const IntMatrix second{{0, 1}, {1, 0}};
  CHECK(rank(first) == 2);
  CHECK(rank(second) == 2);
  CHECK(rank(tangent) == 2);
}

TEST_CASE("dominance requires the dimension hypothesis") {
  try {
    (void)check_dominant(make(2, {"y1 - x1", "x1 - x2", "y2 - 1"}), Projection::First, 5, 0, kPrec);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionHypothesis);
  }
}

TEST_CASE("property: dimension is additive over independent blocks") {
  const std::vector<ExpVariety> blocks{
      graph(1), make(1, {"y1 - 2"}), make(1, {"x1 - 1", "y1 - 3"}), make(1, {"x1*y1 - 1"}),
      make(1, {"y1^2 - x1"}), make(2, {"y1 - x2", "y2 - x1"})};
  std::vector<int> dims;
  for (const auto& b : blocks) dims.push_back(estimate_dimension(b, 5, 1, kPrec));
  CHECK(dims == std::vector<int>{1, 1, 0, 1, 1, 2});
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto v = product(blocks[a], blocks[b]);
      CHECK(estimate_dimension(v, 5, 2, kPrec) == dims[a] + dims[b]);
    }
  }
}

TEST_CASE("property: graphs of random polynomial maps have dominant first projection") {
  Rng rng(12);
  for (int t = 0; t < 8; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    ExpVariety v;
    v.n = n;
    for (std::size_t i = 0; i < n; ++i) {
      MultiPoly::TermMap terms;
      for (int k = 0; k < 3; ++k) {
        Exponents e(2 * n, 0);
        for (std::size_t c = 0; c < n; ++c) e[c] = static_cast<std::uint32_t>(rng.integer(0, 2));
        terms[e] += GaussianRational(mpq_class(rng.integer(-5, 5)), mpq_class(rng.integer(-5, 5)));
      }
      Exponents ey(2 * n, 0);
      ey[n + i] = 1;
      terms[ey] = GaussianRational(1);
      v.generators.emplace_back(2 * n, terms);
    }
    CHECK(check_dominant(v, Projection::First, 5, static_cast<std::uint64_t>(t), kPrec));
  }
}

TEST_CASE("hypothesis report is deterministic") {
  const auto v = make(2, {"y1 - x2", "y2 - x1"});
  const auto a = check_hypotheses(v, 5, 9, kPrec);
  const auto b = check_hypotheses(v, 5, 9, kPrec);
  CHECK(a.dim_estimate == 2);
  CHECK(a.pi1_dominant);
  CHECK(a.pi2_dominant);
  CHECK(a.dim_estimate == b.dim_estimate);
  CHECK(a.sample_dimensions == b.sample_dimensions);
  CHECK(a.samples_used == b.samples_used);
  const auto s1 = sample_point(v, 4, kPrec);
  const auto s2 = sample_point(v, 4, kPrec);
  for (std::size_t k = 0; k < s1.coords.size(); ++k) CHECK(identical(s1.coords[k], s2.coords[k]));
}

TEST_CASE("rotundity spot checks") {
  const auto id = graph(2);
  const auto r1 = rotundity_spot_check(id, {IntMatrix::identity(2)}, 5, 0, kPrec);
  CHECK(r1[0].dim_estimate == 2);
  CHECK(r1[0].holds);
  const auto swap = make(2, {"y1 - x2", "y2 - x1"});
  const auto r2 = rotundity_spot_check(swap, {IntMatrix{{1, 1}, {0, 0}}, IntMatrix{{1, 0}, {0, 1}}}, 5, 0, kPrec);
  CHECK(r2[0].rank_m == 1);
  CHECK(r2[0].dim_estimate >= 1);
  CHECK(r2[0].holds);
  CHECK(r2[1].dim_estimate == 2);
  CHECK(r2[1].holds);
}
