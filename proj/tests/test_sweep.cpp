#include "expclose/errors.hpp"
#include "expclose/poly_text.hpp"
#include "expclose/sweep.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <complex>

using namespace expclose;

namespace {

constexpr Precision kPrec = 256;

ExpVariety variety(std::size_t n, std::initializer_list<const char*> gens) {
  ExpVariety v;
  v.n = n;
  for (const char* g : gens) v.generators.push_back(parse_poly(g, variety_variable_names(n)));
  return v;
}

TriangularSystem tri(std::size_t n, std::initializer_list<const char*> texts) {
  TriangularSystem t;
  t.n = n;
  for (const char* p : texts) t.polys.push_back(parse_poly(p, triangular_variable_names(n)));
  return t;
}

SweepContext context() {
  SweepContext c;
  c.solve.solve.precision = kPrec;
  return c;
}

SweepPlan plan(std::vector<SeedRange> box) {
  SweepPlan p;
  p.seed_box = std::move(box);
  return p;
}

std::complex<double> to_double(const Complex& c) { return {c.re().to_double(), c.im().to_double()}; }

// Modified Gram-Schmidt on unit-normalized columns in double precision.
std::size_t rank_oracle(std::vector<std::vector<std::complex<double>>> cols, double tol) {
  std::vector<std::vector<std::complex<double>>> basis;
  for (auto& c : cols) {
    double n0 = 0;
    for (auto& x : c) n0 += std::norm(x);
    n0 = std::sqrt(n0);
    if (n0 == 0) continue;
    for (auto& x : c) x /= n0;
    for (const auto& b : basis) {
      std::complex<double> dot = 0;
      for (std::size_t i = 0; i < c.size(); ++i) dot += std::conj(b[i]) * c[i];
      for (std::size_t i = 0; i < c.size(); ++i) c[i] -= dot * b[i];
    }
    double n1 = 0;
    for (auto& x : c) n1 += std::norm(x);
    n1 = std::sqrt(n1);
    if (n1 <= tol) continue;
    for (auto& x : c) x /= n1;
    basis.push_back(c);
  }
  return basis.size();
}

std::vector<SolutionPoint> exp_equals_z_solutions(long count) {
  const ExpVariety v = variety(1, {"y1 - x1"});
  const SweepResult r = sweep(v, plan({{1, count}}), context());
  std::vector<SolutionPoint> out;
  for (const auto& s : r.solutions) out.push_back(s.solution);
  return out;
}

}  // namespace

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(plan({}).validate(1), Error);
  try {
    plan({}).validate(1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyPlan);
  }
  try {
    plan({{0, 0}}).validate(1);
    FAIL("zero-only range accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyPlan);
  }
  try {
    plan({{3, 1}}).validate(1);
    FAIL("reversed range accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyPlan);
  }
  SweepPlan p = plan({{1, 2}});
  p.budget = 0;
  try {
    p.validate(1);
    FAIL("zero budget accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
  try {
    sweep(variety(1, {"y1 - x1"}), plan({}), context());
    FAIL("empty box swept");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyPlan);
  }
}

TEST_CASE("seed enumeration is lexicographic and skips zero") {
  const auto seeds = enumerate_seeds({{-1, 1}, {1, 2}});
  CHECK(seeds == std::vector<std::vector<long>>{{-1, 1}, {-1, 2}, {1, 1}, {1, 2}});
  CHECK(enumerate_seeds({{-2, 2}, {-2, 2}}).size() == 16);
}

TEST_CASE("monomials up to a degree") {
  const auto m = monomials_up_to(2, 2);
  CHECK(m == std::vector<std::vector<unsigned>>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
  CHECK(monomials_up_to(4, 2).size() == 15);
  CHECK(monomials_up_to(3, 0).size() == 1);
}

TEST_CASE("swap system sweep excludes the diagonal torus") {
  const ExpVariety v = variety(2, {"y1 - x2", "y2 - x1"});
  SweepPlan p = plan({{-2, 2}, {-2, 2}});
  p.height_bound = 100;
  const SweepResult r = sweep(v, p, context());

  CHECK(r.seeds_tried == 16);
  REQUIRE(r.hypotheses);
  CHECK(r.hypotheses->dim_estimate == 2);
  CHECK(r.hypotheses->pi1_dominant);
  CHECK(r.hypotheses->pi2_dominant);
  CHECK(r.outcome == SweepOutcome::Ok);

  const Real e30 = Real::parse("1e-30", kPrec);
  std::size_t diagonal = 0;
  for (const RejectedSeed& rej : r.rejected) {
    REQUIRE(rej.seed.k.size() == 2);
    if (rej.seed.k[0] != rej.seed.k[1]) continue;
    ++diagonal;
    REQUIRE(rej.solution);
    REQUIRE(rej.torus_index);
    CHECK((rej.solution->z[0] - rej.solution->z[1]).abs() <= e30);
    const Complex oracle = oracle::exp_equals_z(rej.seed.k[0], kPrec);
    CHECK((rej.solution->z[0] - oracle).abs() <= e30);
    const Torus& t = r.tori[*rej.torus_index];
    CHECK(t.dim == 1);
    CHECK(t.identity_component.rows() == 1);
    CHECK(abs(t.identity_component(0, 0)) == 1);
    CHECK(t.identity_component(0, 0) == -t.identity_component(0, 1));
  }
  CHECK(diagonal == 4);
  CHECK(r.tori.size() == 1);

  std::size_t off_diagonal = 0;
  for (const AcceptedSolution& a : r.solutions) {
    CHECK(a.solution.seed.k[0] != a.solution.seed.k[1]);
    CHECK(a.audit.verdict == Verdict::PresumedGeneric);
    CHECK(a.audit.height_bound == 100);
    CHECK(a.audit.precision_bits == kPrec);
    // e^{z1} = z2 and e^{z2} = z1, evaluated directly
    CHECK((exp(a.solution.z[0]) - a.solution.z[1]).abs() <= e30);
    CHECK((exp(a.solution.z[1]) - a.solution.z[0]).abs() <= e30);
    ++off_diagonal;
  }
  CHECK(off_diagonal >= 4);
}

TEST_CASE("exclusion is monotone over the accepted set") {
  const ExpVariety v = variety(2, {"y1 - x2", "y2 - x1"});
  const SweepResult r = sweep(v, plan({{-2, 2}, {-2, 2}}), context());
  const Real tol = relation_threshold(2, 100, kPrec);
  for (const Torus& t : r.tori) {
    for (const AcceptedSolution& a : r.solutions) CHECK_FALSE(on_torus(t, a.solution.z, tol));
  }
}

TEST_CASE("plan tori reject matching solutions without an audit hit") {
  const ExpVariety v = variety(2, {"y1 - x2", "y2 - x1"});
  SweepPlan p = plan({{1, 1}, {1, 1}});
  IntMatrix m(1, 2);
  m(0, 0) = 1;
  m(0, 1) = -1;
  p.excluded_tori.push_back(build_torus(m));
  const SweepResult r = sweep(v, p, context());
  REQUIRE(r.rejected.size() == 1);
  CHECK(r.rejected[0].stage == "exclusion");
  CHECK(r.rejected[0].torus_index == std::optional<std::size_t>(0));
  CHECK(r.tori.size() == 1);
  CHECK(r.outcome == SweepOutcome::NoGenericSolution);
}

TEST_CASE("e^z = z over seeds 1..5 is presumed generic") {
  const ExpVariety v = variety(1, {"y1 - x1"});
  const SweepResult r = sweep(v, plan({{1, 5}}), context());
  REQUIRE(r.solutions.size() == 5);
  CHECK(r.rejected.empty());
  const Real two_pi = Real::pi(kPrec) * Real(2L, kPrec);
  for (std::size_t i = 0; i < 5; ++i) {
    const Complex& z = r.solutions[i].solution.z[0];
    CHECK((z - oracle::exp_equals_z(static_cast<long>(i) + 1, kPrec)).abs() <= Real::parse("1e-40", kPrec));
    for (std::size_t j = 0; j < i; ++j) CHECK((z - r.solutions[j].solution.z[0]).abs() > Real(1L, kPrec));
    // brute force: r z = 2 pi i m0 with 1 <= |r| <= 100 would force Re z = 0;
    // r z = 0 would force z = 0
    for (long rr = 1; rr <= 100; ++rr) {
      const Complex rz = z * Real(rr, kPrec);
      CHECK(abs(rz.re()) > Real(1L, kPrec));
      const Real m0((rz.im() / two_pi).round_to_integer(), kPrec);
      CHECK((abs(rz.im() - two_pi * m0) + abs(rz.re())) > Real::parse("1e-30", kPrec));
    }
    CHECK(r.solutions[i].audit.verdict == Verdict::PresumedGeneric);
    CHECK(r.solutions[i].audit.td_proxy == 1);
  }
}

TEST_CASE("sweep is deterministic across thread counts") {
  const ExpVariety v = variety(2, {"y1 - x2", "y2 - x1"});
  SweepPlan a = plan({{-1, 1}, {1, 2}});
  SweepPlan b = a;
  b.threads = 3;
  const SweepResult ra = sweep(v, a, context());
  const SweepResult rb = sweep(v, b, context());
  REQUIRE(ra.solutions.size() == rb.solutions.size());
  REQUIRE(ra.rejected.size() == rb.rejected.size());
  for (std::size_t i = 0; i < ra.solutions.size(); ++i) {
    CHECK(ra.solutions[i].solution.seed == rb.solutions[i].solution.seed);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(identical(ra.solutions[i].solution.z[j], rb.solutions[i].solution.z[j]));
    }
  }
  for (std::size_t i = 0; i < ra.rejected.size(); ++i) {
    CHECK(ra.rejected[i].seed == rb.rejected[i].seed);
    CHECK(ra.rejected[i].reason == rb.rejected[i].reason);
  }
  CHECK(ra.tori == rb.tori);
}

TEST_CASE("branch policy all covers every branch within the budget") {
  const TriangularSystem t = tri(1, {"u^2 - x1"});
  SweepPlan p = plan({{1, 2}});
  p.branch_policy = BranchPolicy::All;
  const SweepResult r = sweep(t, p, context());
  CHECK(r.seeds_tried == 4);
  CHECK_FALSE(r.hypotheses);
  std::vector<Seed> seen;
  for (const auto& s : r.solutions) seen.push_back(s.solution.seed);
  for (const auto& s : r.rejected) seen.push_back(s.seed);
  CHECK(seen.size() == 4);
  p.budget = 1;
  CHECK(sweep(t, p, context()).seeds_tried == 2);
  p.branch_policy = BranchPolicy::First;
  CHECK(sweep(t, p, context()).seeds_tried == 1);
}

TEST_CASE("hypothesis gate and override") {
  const ExpVariety v = variety(1, {"y1 - 2"});
  try {
    sweep(v, plan({{1, 1}}), context());
    FAIL("gate passed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DominanceHypothesis);
  }
}

TEST_CASE("density evidence examples") {
  const auto ten = exp_equals_z_solutions(10);
  REQUIRE(ten.size() == 10);

  const DensityEvidence one = density_evidence({ten[0]}, 0);
  CHECK(one.monomial_rank == 1);
  CHECK(one.full);
  CHECK_FALSE(one.inconclusive);

  const std::vector<SolutionPoint> five(ten.begin(), ten.begin() + 5);
  const DensityEvidence d5 = density_evidence(five, 2);
  CHECK(d5.inconclusive);
  CHECK_FALSE(d5.full);
  CHECK(d5.monomial_count == 6);
  CHECK(d5.monomial_rank <= 5);
  CHECK_FALSE(d5.reason.empty());

  // On the graph y = e^z = z, so the columns z and y coincide.
  const DensityEvidence graph = density_evidence(ten, 2);
  std::vector<std::vector<std::complex<double>>> cols;
  for (const auto& mono : monomials_up_to(2, 2)) {
    std::vector<std::complex<double>> col;
    for (const auto& s : ten) {
      const auto z = to_double(s.z[0]);
      const auto y = to_double(s.y[0]);
      col.push_back(std::pow(z, static_cast<int>(mono[0])) * std::pow(y, static_cast<int>(mono[1])));
    }
    cols.push_back(col);
  }
  CHECK(graph.monomial_count == 6);
  CHECK(graph.monomial_rank == rank_oracle(cols, 1e-9));
  CHECK(graph.monomial_rank == 3);
  CHECK_FALSE(graph.full);
  CHECK_FALSE(graph.inconclusive);

  const DensityEvidence base = density_evidence(ten, 2, DensitySpace::Base);
  CHECK(base.monomial_count == 3);
  CHECK(base.monomial_rank == 3);
  CHECK(base.full);

  CHECK_THROWS_AS(density_evidence({}, 1), Error);
}

TEST_CASE("sweep attaches density evidence when asked") {
  const ExpVariety v = variety(1, {"y1 - x1"});
  SweepPlan p = plan({{1, 3}});
  p.density_degree = 1;
  const SweepResult r = sweep(v, p, context());
  REQUIRE(r.density);
  CHECK(r.density->solutions == 3);
  CHECK(r.density->monomial_count == 3);
}
