#include "expclose/variety.hpp"

#include "expclose/errors.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace expclose {

void ExpVariety::validate() const {
  if (n == 0) throw Error(ErrorKind::Arity, "variety needs n >= 1");
  if (generators.empty()) throw Error(ErrorKind::Arity, "variety needs at least one generator");
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].num_vars() != 2 * n) {
      throw Error(ErrorKind::Arity, "generator " + std::to_string(j + 1) + " has " +
                                        std::to_string(generators[j].num_vars()) + " variables, expected " +
                                        std::to_string(2 * n));
    }
  }
}

namespace {

struct Jacobian {
  explicit Jacobian(const ExpVariety& v) : variety(v) {
    for (const MultiPoly& g : v.generators) {
      std::vector<MultiPoly> row;
      for (std::size_t c = 0; c < 2 * v.n; ++c) row.push_back(g.partial(c));
      partials.push_back(std::move(row));
    }
  }

  [[nodiscard]] CMatrix at(const std::vector<Complex>& w, Precision prec) const {
    CMatrix j(partials.size(), 2 * variety.n, prec);
    for (std::size_t r = 0; r < partials.size(); ++r)
      for (std::size_t c = 0; c < partials[r].size(); ++c) j(r, c) = partials[r][c].eval(w);
    return j;
  }

  const ExpVariety& variety;
  std::vector<std::vector<MultiPoly>> partials;
};

std::vector<Complex> residuals(const ExpVariety& v, const std::vector<Complex>& w,
                               const std::vector<std::vector<Complex>>& slices, const std::vector<Complex>& base) {
  std::vector<Complex> f;
  f.reserve(v.generators.size() + slices.size());
  for (const MultiPoly& g : v.generators) f.push_back(g.eval(w));
  for (const auto& a : slices) {
    Complex s(w.front().precision());
    for (std::size_t c = 0; c < w.size(); ++c) s += a[c] * (w[c] - base[c]);
    f.push_back(s);
  }
  return f;
}

enum class Attempt { Ok, Hyperplane, Failed };

Attempt attempt_sample(const ExpVariety& v, const Jacobian& jac, Rng& rng, std::size_t slices_count,
                       Precision prec, std::size_t max_newton, std::vector<Complex>& out) {
  const std::size_t dim = 2 * v.n;
  std::vector<Complex> base;
  for (std::size_t c = 0; c < dim; ++c) base.push_back(rng.complex_in_box(2.0, prec));
  std::vector<std::vector<Complex>> slices(slices_count);
  for (auto& a : slices)
    for (std::size_t c = 0; c < dim; ++c) a.push_back(rng.complex_in_box(1.0, prec));

  std::vector<Complex> w = base;
  const Real target = Real::pow2(-static_cast<long>(prec) + 20, prec);
  const Real blowup = Real::pow2(40, prec);
  for (std::size_t it = 0; it < max_newton; ++it) {
    const auto f = residuals(v, w, slices, base);
    const Real fn = max_abs(f);
    if (fn <= target) break;
    CMatrix j = jac.at(w, prec);
    if (!slices.empty()) {
      CMatrix s(slices.size(), dim, prec);
      for (std::size_t r = 0; r < slices.size(); ++r)
        for (std::size_t c = 0; c < dim; ++c) s(r, c) = slices[r][c];
      j = CMatrix::stack(j, s);
    }
    const auto step = pinv_solve(j, f);
    Real lambda(1L, prec);
    bool accepted = false;
    for (int h = 0; h < 60 && !accepted; ++h) {
      std::vector<Complex> trial = w;
      for (std::size_t c = 0; c < dim; ++c) trial[c] -= step[c] * lambda;
      if (max_abs(residuals(v, trial, slices, base)) < fn) {
        w = std::move(trial);
        accepted = true;
      }
      lambda *= Real(0.5, prec);
    }
    if (!accepted) break;
    if (max_abs(w) > blowup) return Attempt::Failed;
  }
  if (max_generator_residual(v, w) > Real::pow2(-static_cast<long>(prec) / 2, prec)) return Attempt::Failed;
  const Real floor = rank_cutoff(prec);
  for (std::size_t i = 0; i < v.n; ++i) {
    if (w[v.n + i].abs() < floor) return Attempt::Hyperplane;
  }
  out = std::move(w);
  return Attempt::Ok;
}

template <typename T>
std::optional<T> majority(const std::vector<T>& values) {
  std::map<T, std::size_t> counts;
  for (const T& x : values) ++counts[x];
  for (const auto& [value, count] : counts) {
    if (2 * count > values.size()) return value;
  }
  return std::nullopt;
}

std::size_t projection_rank(const CMatrix& j, std::size_t rank_j, std::size_t n, Projection which) {
  CMatrix p(n, 2 * n, j.precision());
  const std::size_t offset = which == Projection::First ? 0 : n;
  for (std::size_t i = 0; i < n; ++i) p(i, offset + i) = Complex(Real(1L, j.precision()), Real(0L, j.precision()));
  return numerical_rank(CMatrix::stack(j, p)) - rank_j;
}

std::string sample_failure(ErrorKind kind) {
  return kind == ErrorKind::CoordinateHyperplane ? "every sample attempt landed on a coordinate hyperplane y_i = 0"
                                                 : "no sample point converged within the retry budget";
}

}  // namespace

Real max_generator_residual(const ExpVariety& v, const std::vector<Complex>& coords) {
  Real m(0L, coords.empty() ? 53 : coords.front().precision());
  for (const MultiPoly& g : v.generators) m = max(m, g.eval(coords).abs());
  return m;
}

CMatrix generator_jacobian(const ExpVariety& v, const std::vector<Complex>& coords) {
  return Jacobian(v).at(coords, coords.front().precision());
}

SamplePoint sample_point(const ExpVariety& v, std::uint64_t rng_seed, Precision precision,
                         const SamplingOptions& options) {
  v.validate();
  const Jacobian jac(v);
  Rng rng(rng_seed);
  bool hyperplane = false;
  for (std::size_t attempt = 0; attempt < options.retry_limit; ++attempt) {
    const std::size_t slices = attempt % (v.n + 1);
    std::vector<Complex> w;
    switch (attempt_sample(v, jac, rng, slices, precision, options.max_newton, w)) {
      case Attempt::Ok: {
        Real res = max_generator_residual(v, w);
        return SamplePoint{std::move(w), std::move(res)};
      }
      case Attempt::Hyperplane:
        hyperplane = true;
        break;
      case Attempt::Failed:
        break;
    }
  }
  const ErrorKind kind = hyperplane ? ErrorKind::CoordinateHyperplane : ErrorKind::NoConvergence;
  throw Error(kind, sample_failure(kind), "sample");
}

std::vector<SamplePoint> draw_samples(const ExpVariety& v, std::size_t count, std::uint64_t rng_seed,
                                      Precision precision) {
  std::vector<SamplePoint> out;
  bool hyperplane = false;
  for (std::size_t k = 0; k < count; ++k) {
    try {
      out.push_back(sample_point(v, Rng::derive(rng_seed, k).next(), precision));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CoordinateHyperplane) hyperplane = true;
      if (e.kind() != ErrorKind::CoordinateHyperplane && e.kind() != ErrorKind::NoConvergence) throw;
    }
  }
  if (out.empty()) {
    throw Error(hyperplane ? ErrorKind::CoordinateHyperplane : ErrorKind::NoSample,
                sample_failure(hyperplane ? ErrorKind::CoordinateHyperplane : ErrorKind::NoConvergence), "sample");
  }
  return out;
}

namespace {

std::vector<int> sample_dimensions(const ExpVariety& v, const std::vector<SamplePoint>& samples,
                                   std::vector<std::size_t>& ranks, std::vector<CMatrix>& jacobians) {
  const Jacobian jac(v);
  std::vector<int> dims;
  for (const SamplePoint& s : samples) {
    jacobians.push_back(jac.at(s.coords, s.coords.front().precision()));
    ranks.push_back(numerical_rank(jacobians.back()));
    dims.push_back(static_cast<int>(2 * v.n) - static_cast<int>(ranks.back()));
  }
  return dims;
}

int vote_dimension(const std::vector<int>& dims) {
  const auto m = majority(dims);
  if (!m) throw Error(ErrorKind::RankUnstable, "Jacobian rank differs across samples without a majority", "check");
  return *m;
}

bool vote_dominance(const ExpVariety& v, const std::vector<CMatrix>& jacobians, const std::vector<std::size_t>& ranks,
                    Projection which) {
  std::vector<bool> votes;
  for (std::size_t k = 0; k < jacobians.size(); ++k)
    votes.push_back(projection_rank(jacobians[k], ranks[k], v.n, which) == v.n);
  const auto m = majority(votes);
  if (!m) throw Error(ErrorKind::RankUnstable, "projection rank differs across samples without a majority", "check");
  return *m;
}

}  // namespace

int estimate_dimension(const ExpVariety& v, std::size_t samples, std::uint64_t rng_seed, Precision precision) {
  const auto pts = draw_samples(v, samples, rng_seed, precision);
  std::vector<std::size_t> ranks;
  std::vector<CMatrix> jacobians;
  return vote_dimension(sample_dimensions(v, pts, ranks, jacobians));
}

bool check_dominant(const ExpVariety& v, Projection which, std::size_t samples, std::uint64_t rng_seed,
                    Precision precision) {
  const auto pts = draw_samples(v, samples, rng_seed, precision);
  std::vector<std::size_t> ranks;
  std::vector<CMatrix> jacobians;
  const int dim = vote_dimension(sample_dimensions(v, pts, ranks, jacobians));
  if (dim != static_cast<int>(v.n)) {
    throw Error(ErrorKind::DimensionHypothesis,
                "dimension estimate " + std::to_string(dim) + " differs from n = " + std::to_string(v.n), "check");
  }
  return vote_dominance(v, jacobians, ranks, which);
}

HypothesisReport check_hypotheses(const ExpVariety& v, std::size_t samples, std::uint64_t rng_seed,
                                  Precision precision) {
  v.validate();
  HypothesisReport r;
  r.precision_bits = precision;
  r.tolerance = rank_cutoff(precision);
  r.rng_seed = rng_seed;
  const auto pts = draw_samples(v, samples, rng_seed, precision);
  r.samples_used = pts.size();
  std::vector<std::size_t> ranks;
  std::vector<CMatrix> jacobians;
  r.sample_dimensions = sample_dimensions(v, pts, ranks, jacobians);
  r.dim_estimate = vote_dimension(r.sample_dimensions);
  if (r.dim_estimate != static_cast<int>(v.n)) {
    r.notes.push_back("dimension estimate differs from n; dominance not tested");
    return r;
  }
  r.pi1_dominant = vote_dominance(v, jacobians, ranks, Projection::First);
  r.pi2_dominant = vote_dominance(v, jacobians, ranks, Projection::Second);
  r.notes.push_back("dominance certified numerically by tangent-space rank at sampled points");
  return r;
}

std::vector<RotundityEntry> rotundity_spot_check(const ExpVariety& v, const std::vector<IntMatrix>& matrices,
                                                 std::size_t samples, std::uint64_t rng_seed, Precision precision) {
  if (!check_dominant(v, Projection::First, samples, rng_seed, precision)) {
    throw Error(ErrorKind::DominanceHypothesis, "first projection is not dominant", "rotundity");
  }
  const auto pts = draw_samples(v, samples, rng_seed, precision);
  const Jacobian jac(v);
  std::vector<RotundityEntry> out;
  for (const IntMatrix& m : matrices) {
    if (m.cols() != v.n) throw Error(ErrorKind::Arity, "matrix must have n columns", "rotundity");
    if (m.is_zero()) throw Error(ErrorKind::ZeroMatrix, "matrix must be nonzero", "rotundity");
    RotundityEntry e{m, rank(m), 0, false};
    std::vector<int> dims;
    for (const SamplePoint& s : pts) {
      const Precision prec = s.coords.front().precision();
      const CMatrix j = jac.at(s.coords, prec);
      // differential of (x, y) -> (M x, y^M)
      CMatrix d(2 * m.rows(), 2 * v.n, prec);
      for (std::size_t r = 0; r < m.rows(); ++r) {
        Complex monomial(Real(1L, prec), Real(0L, prec));
        for (std::size_t c = 0; c < v.n; ++c) monomial *= pow(s.coords[v.n + c], m(r, c).get_si());
        for (std::size_t c = 0; c < v.n; ++c) {
          const Real entry(m(r, c), prec);
          d(r, c) = Complex(entry, Real(0L, prec));
          d(m.rows() + r, v.n + c) = monomial * entry / s.coords[v.n + c];
        }
      }
      const std::size_t rj = numerical_rank(j);
      dims.push_back(static_cast<int>(numerical_rank(CMatrix::stack(j, d)) - rj));
    }
    const auto vote = majority(dims);
    if (!vote) throw Error(ErrorKind::RankUnstable, "pushforward rank unstable across samples", "rotundity");
    e.dim_estimate = *vote;
    e.holds = e.dim_estimate >= static_cast<int>(e.rank_m);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace expclose
