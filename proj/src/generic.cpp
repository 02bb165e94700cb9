#include "expclose/generic.hpp"

#include "expclose/errors.hpp"

#include <algorithm>

namespace expclose {

Real relation_threshold(std::size_t n, const mpz_class& height_bound, Precision precision) {
  return Real(static_cast<long>(n), precision) * Real(height_bound, precision) *
         Real::pow2(-static_cast<long>(precision) / 2, precision);
}

void check_relation_precision(const mpz_class& height_bound, Precision precision) {
  if (height_bound < 1) throw Error(ErrorKind::Config, "height bound must be at least 1", "audit");
  // H^4 <= 2^{p - 64}
  mpz_class h4 = height_bound * height_bound;
  h4 *= h4;
  mpz_class limit = 0;
  if (precision >= 64) mpz_ui_pow_ui(limit.get_mpz_t(), 2, static_cast<unsigned long>(precision - 64));
  if (precision < 64 || h4 > limit) {
    throw Error(ErrorKind::PrecisionTooLow,
                "precision " + std::to_string(precision) + " bits is below 4 log2(H) + 64 for H = " +
                    height_bound.get_str(),
                "audit");
  }
}

namespace {

struct Candidate {
  std::vector<mpz_class> r;
  mpz_class m0;
  mpz_class height;
  Real error;
};

bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.height != b.height) return a.height < b.height;
  if (a.r != b.r) return a.r < b.r;
  return a.m0 < b.m0;
}

std::optional<IntegerRelationMatrix> find_relations(const std::vector<Complex>& z_in, const mpz_class& height_bound,
                                                    Precision precision, RelationKind kind) {
  check_relation_precision(height_bound, precision);
  const std::size_t n = z_in.size();
  if (n == 0) throw Error(ErrorKind::Arity, "relation search needs at least one coordinate", "audit");
  std::vector<Complex> values;
  for (const Complex& c : z_in) values.push_back(c.with_precision(precision));
  const Complex two_pi_i(Real(0L, precision), Real::pi(precision) * Real(2L, precision));
  const bool mult = kind == RelationKind::Multiplicative;
  if (mult) values.push_back(two_pi_i);

  const std::size_t dim = values.size();
  const Real scale = Real::pow2(static_cast<long>(precision) / 2, precision);
  IntMatrix basis(dim, dim + 2);
  for (std::size_t i = 0; i < dim; ++i) {
    basis(i, i) = 1;
    basis(i, dim) = (values[i].re() * scale).round_to_integer();
    basis(i, dim + 1) = (values[i].im() * scale).round_to_integer();
  }
  const IntMatrix reduced = lll_reduce(basis);

  const Real threshold = relation_threshold(n, height_bound, precision);
  std::vector<Candidate> found;
  for (std::size_t row = 0; row < reduced.rows(); ++row) {
    std::vector<mpz_class> r(n);
    bool nonzero = false;
    bool bounded = true;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = reduced(row, i);
      if (r[i] != 0) nonzero = true;
      if (abs(r[i]) > height_bound) bounded = false;
    }
    if (!nonzero || !bounded) continue;
    mpz_class m0 = mult ? mpz_class(-reduced(row, n)) : mpz_class(0);
    std::vector<mpz_class> all = r;
    all.push_back(m0);
    const mpz_class g = content(all);
    for (auto& x : r) x /= g;
    m0 /= g;
    const auto first = std::find_if(r.begin(), r.end(), [](const mpz_class& x) { return x != 0; });
    if (*first < 0) {
      for (auto& x : r) x = -x;
      m0 = -m0;
    }
    Complex dot(precision);
    for (std::size_t i = 0; i < n; ++i) dot += values[i] * Real(r[i], precision);
    if (mult) dot -= two_pi_i * Real(m0, precision);
    Real err = dot.abs();
    if (!(err <= threshold)) continue;
    mpz_class h = 0;
    for (const auto& x : r) h = std::max(h, mpz_class(abs(x)));
    found.push_back(Candidate{std::move(r), std::move(m0), std::move(h), std::move(err)});
  }
  if (found.empty()) return std::nullopt;
  std::sort(found.begin(), found.end(), candidate_less);

  IntegerRelationMatrix out;
  out.kind = kind;
  out.m = IntMatrix(0, n);
  out.witness_error = Real(0L, precision);
  for (Candidate& c : found) {
    IntMatrix trial = out.m;
    trial.append_row(c.r);
    if (rank(trial) != trial.rows()) continue;
    out.m = std::move(trial);
    out.offsets.push_back(c.m0);
    out.witness_error = max(out.witness_error, c.error);
  }
  return out;
}

}  // namespace

std::optional<IntegerRelationMatrix> find_additive_relations(const std::vector<Complex>& z,
                                                             const mpz_class& height_bound, Precision precision) {
  return find_relations(z, height_bound, precision, RelationKind::Additive);
}

std::optional<IntegerRelationMatrix> find_multiplicative_relations(const std::vector<Complex>& z,
                                                                   const mpz_class& height_bound, Precision precision) {
  return find_relations(z, height_bound, precision, RelationKind::Multiplicative);
}

Hyperplane build_hyperplane(const IntMatrix& m) {
  if (m.is_zero()) throw Error(ErrorKind::ZeroMatrix, "relation matrix is zero", "audit");
  return Hyperplane{m, m.cols() - rank(m)};
}

Torus build_torus(const IntMatrix& m) {
  if (m.rows() == 0 || m.is_zero()) throw Error(ErrorKind::ZeroMatrix, "relation matrix is zero", "audit");
  const SmithForm s = smith_normal_form(m);
  return Torus{m, m.cols() - s.rank(), saturate_rows(m), s.invariant_factors};
}

bool on_torus(const Torus& t, const std::vector<Complex>& z, const Real& tol) {
  if (z.size() != t.identity_component.cols()) return false;
  const Precision prec = z.front().precision();
  const Real two_pi = Real::pi(prec) * Real(2L, prec);
  for (std::size_t r = 0; r < t.identity_component.rows(); ++r) {
    Complex dot(prec);
    for (std::size_t c = 0; c < z.size(); ++c) dot += z[c] * Real(t.identity_component(r, c), prec);
    const Real m0((dot.im() / two_pi).round_to_integer(), prec);
    const Complex off = dot - Complex(Real(0L, prec), two_pi * m0);
    if (!(off.abs() <= tol)) return false;
  }
  return true;
}

GenericityReport audit(const SolutionPoint& s, const mpz_class& height_bound, Precision precision) {
  const Precision prec = std::min(precision, s.precision_bits);
  const std::size_t n = s.z.size();
  GenericityReport r;
  r.height_bound = height_bound;
  r.precision_bits = prec;
  r.tolerance = relation_threshold(n, height_bound, prec);
  auto additive = find_additive_relations(s.z, height_bound, prec);
  auto multiplicative = find_multiplicative_relations(s.z, height_bound, prec);
  r.td_proxy = static_cast<int>(n) - (additive ? static_cast<int>(rank(additive->m)) : 0);
  for (auto* rel : {&additive, &multiplicative}) {
    if (!*rel) continue;
    r.hyperplanes.push_back(build_hyperplane((*rel)->m));
    r.tori.push_back(build_torus((*rel)->m));
    r.relations.push_back(std::move(**rel));
  }
  r.verdict = r.relations.empty() ? Verdict::PresumedGeneric : Verdict::RelationsFound;
  const std::string scope = "up to height " + height_bound.get_str() + " at precision " + std::to_string(prec) + " bits";
  r.notes.push_back(r.verdict == Verdict::PresumedGeneric ? "presumed generic " + scope
                                                         : "relations verified by evaluation " + scope);
  r.notes.push_back("td_proxy = n - rank of additive relations stands in for the transcendence degree");
  r.notes.push_back("additive search is homogeneous; affine relations r.z = b with b != 0 are not searched");
  return r;
}

}  // namespace expclose
