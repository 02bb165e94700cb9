#include "expclose/masser.hpp"

#include "expclose/errors.hpp"
#include "expclose/roots.hpp"

#include <algorithm>
#include <sstream>

namespace expclose {

Real default_tolerance(Precision precision) { return Real::pow2(-static_cast<long>(precision) / 2, precision); }

void validate_seed(const Seed& seed, std::size_t n, const std::vector<std::uint32_t>& degrees) {
  if (seed.k.size() != n) {
    throw Error(ErrorKind::InvalidSeed, "seed needs " + std::to_string(n) + " entries, got " + std::to_string(seed.k.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (seed.k[i] == 0) throw Error(ErrorKind::InvalidSeed, "seed entry " + std::to_string(i + 1) + " is zero");
  }
  if (seed.branch.empty()) return;
  if (seed.branch.size() != n) {
    throw Error(ErrorKind::InvalidSeed, "branch choice needs " + std::to_string(n) + " entries");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t limit = degrees.empty() ? 1 : degrees[i];
    if (seed.branch[i] >= limit) {
      throw Error(ErrorKind::InvalidSeed, "branch index " + std::to_string(seed.branch[i]) + " for coordinate " +
                                              std::to_string(i + 1) + " exceeds degree " + std::to_string(limit));
    }
  }
}

namespace {

struct Singular {};

class RightHandSide {
 public:
  virtual ~RightHandSide() = default;
  /// f(z); `previous` are the values at the last accepted iterate, if any.
  /// Throws Singular when some |f_i| falls below the cut-off.
  virtual std::vector<Complex> value(const std::vector<Complex>& z, const std::vector<Complex>* previous) const = 0;
  /// df_i / dz_j at (z, f).
  virtual CMatrix jacobian(const std::vector<Complex>& z, const std::vector<Complex>& f) const = 0;
  virtual Real var_residual(const std::vector<Complex>& z, const std::vector<Complex>& y) const = 0;
};

void check_nonzero(const std::vector<Complex>& f, const Real& floor) {
  for (const Complex& v : f) {
    if (!v.is_finite()) throw Error(ErrorKind::NumericRange, "right-hand side is not finite", "masser");
    if (v.abs() < floor) throw Singular{};
  }
}

class PolyRhs final : public RightHandSide {
 public:
  PolyRhs(const std::vector<MultiPoly>& p, Precision prec) : p_(p), floor_(rank_cutoff(prec)) {
    for (const MultiPoly& q : p_) {
      std::vector<MultiPoly> row;
      for (std::size_t j = 0; j < p_.size(); ++j) row.push_back(q.partial(j));
      partials_.push_back(std::move(row));
    }
  }

  std::vector<Complex> value(const std::vector<Complex>& z, const std::vector<Complex>*) const override {
    std::vector<Complex> f;
    for (const MultiPoly& q : p_) f.push_back(q.eval(z));
    check_nonzero(f, floor_);
    return f;
  }

  CMatrix jacobian(const std::vector<Complex>& z, const std::vector<Complex>&) const override {
    CMatrix d(p_.size(), p_.size(), z.front().precision());
    for (std::size_t i = 0; i < p_.size(); ++i)
      for (std::size_t j = 0; j < p_.size(); ++j) d(i, j) = partials_[i][j].eval(z);
    return d;
  }

  Real var_residual(const std::vector<Complex>& z, const std::vector<Complex>& y) const override {
    Real m(0L, z.front().precision());
    for (std::size_t i = 0; i < p_.size(); ++i) m = max(m, (y[i] - p_[i].eval(z)).abs());
    return m;
  }

 private:
  const std::vector<MultiPoly>& p_;
  Real floor_;
  std::vector<std::vector<MultiPoly>> partials_;
};

class AlgebraicRhs final : public RightHandSide {
 public:
  AlgebraicRhs(const TriangularSystem& t, std::vector<std::size_t> branch, Precision prec)
      : t_(t), branch_(std::move(branch)), floor_(rank_cutoff(prec)) {
    const std::size_t n = t.n;
    for (const MultiPoly& p : t.polys) {
      coeffs_.push_back(p.coefficients_in(n));
      std::vector<MultiPoly> row;
      for (std::size_t j = 0; j <= n; ++j) row.push_back(p.partial(j));
      partials_.push_back(std::move(row));
    }
  }

  std::vector<Complex> value(const std::vector<Complex>& z, const std::vector<Complex>* previous) const override {
    const std::size_t n = t_.n;
    const Precision prec = z.front().precision();
    std::vector<Complex> point = z;
    point.emplace_back(prec);
    std::vector<Complex> f;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Complex> c;
      for (const MultiPoly& q : coeffs_[i]) c.push_back(q.eval(point));
      Real scale(0L, prec);
      for (const Complex& x : c) scale = max(scale, x.abs());
      if (!scale.is_finite()) throw Error(ErrorKind::NumericRange, "coefficients are not finite", "masser");
      if (c.back().abs() < floor_ * max(Real(1L, prec), scale)) {
        throw Error(ErrorKind::SingularLeadingCoefficient,
                    "leading u-coefficient of p" + std::to_string(i + 1) + " vanishes at the current iterate",
                    "masser");
      }
      const auto roots = polynomial_roots(c);
      std::size_t pick = 0;
      if (previous == nullptr) {
        pick = branch_.empty() ? 0 : branch_[i];
      } else {
        for (std::size_t r = 1; r < roots.size(); ++r)
          if ((roots[r] - (*previous)[i]).abs() < (roots[pick] - (*previous)[i]).abs()) pick = r;
      }
      for (std::size_t r = 0; r < roots.size(); ++r) {
        if (r != pick && (roots[r] - roots[pick]).abs() < floor_) {
          std::ostringstream msg;
          msg << "tracked root of p" << i + 1 << " collides with another root";
          throw Error(ErrorKind::BranchCollision, msg.str(), "masser");
        }
      }
      f.push_back(roots[pick]);
    }
    check_nonzero(f, floor_);
    return f;
  }

  CMatrix jacobian(const std::vector<Complex>& z, const std::vector<Complex>& f) const override {
    const std::size_t n = t_.n;
    CMatrix d(n, n, z.front().precision());
    std::vector<Complex> point = z;
    point.emplace_back(z.front().precision());
    for (std::size_t i = 0; i < n; ++i) {
      point[n] = f[i];
      const Complex du = partials_[i][n].eval(point);
      if (du.is_zero()) throw Error(ErrorKind::BranchCollision, "p" + std::to_string(i + 1) + " has a double root", "masser");
      for (std::size_t j = 0; j < n; ++j) d(i, j) = -partials_[i][j].eval(point) / du;
    }
    return d;
  }

  Real var_residual(const std::vector<Complex>& z, const std::vector<Complex>& y) const override {
    Real m(0L, z.front().precision());
    std::vector<Complex> point = z;
    point.emplace_back(z.front().precision());
    for (std::size_t i = 0; i < t_.n; ++i) {
      point[t_.n] = y[i];
      m = max(m, t_.polys[i].eval(point).abs());
    }
    return m;
  }

 private:
  const TriangularSystem& t_;
  std::vector<std::size_t> branch_;
  Real floor_;
  std::vector<std::vector<MultiPoly>> coeffs_;
  std::vector<std::vector<MultiPoly>> partials_;
};

std::vector<Complex> g_value(const std::vector<Complex>& z, const std::vector<Complex>& f,
                             const std::vector<Complex>& shift) {
  std::vector<Complex> g;
  for (std::size_t i = 0; i < z.size(); ++i) g.push_back(z[i] - shift[i] - log(f[i]));
  return g;
}

std::string short_num(const Real& x) { return x.to_string(6); }

SolutionPoint run_engine(const RightHandSide& rhs, std::size_t n, const Seed& seed, const SolveOptions& options) {
  const Precision prec = options.precision;
  const Real tol = options.tol ? options.tol->with_precision(prec) : default_tolerance(prec);
  const Real two_pi = Real::pi(prec) * Real(2L, prec);
  std::vector<Complex> shift;
  for (long k : seed.k) shift.emplace_back(Real(0L, prec), two_pi * Real(k, prec));

  SolutionPoint out;
  out.seed = seed;
  out.precision_bits = prec;
  out.tolerance = tol;

  std::vector<Complex> z;
  if (options.start) {
    if (options.start->size() != n) throw Error(ErrorKind::Arity, "start point has wrong length", "masser");
    for (const Complex& c : *options.start) z.push_back(c.with_precision(prec));
  } else {
    z = shift;
  }
  std::vector<Complex> f;
  std::vector<Complex> start_y;
  try {
    if (options.start_y) {
      for (const Complex& c : *options.start_y) start_y.push_back(c.with_precision(prec));
      f = rhs.value(z, &start_y);
    } else {
      f = rhs.value(z, nullptr);
    }
  } catch (const Singular&) {
    throw Error(ErrorKind::LogSingularity, "right-hand side vanishes at the start point", "masser");
  }
  std::vector<Complex> g = g_value(z, f, shift);
  Real gn = max_abs(g);

  const Real switch_level = Real::pow2(-10, prec);
  const Real target = Real::pow2(-static_cast<long>(prec) + 16, prec);
  const Real range = Real::pow2(static_cast<long>(prec) / 4, prec);
  std::size_t iter = 0;

  // one damped step along -step; returns false when no halving decreases |G|
  auto damped = [&](const std::vector<Complex>& step) {
    Real lambda(1L, prec);
    bool singular = false;
    for (int h = 0; h <= 60; ++h) {
      std::vector<Complex> trial = z;
      for (std::size_t i = 0; i < n; ++i) trial[i] -= step[i] * lambda;
      lambda *= Real(0.5, prec);
      for (const Complex& c : trial) {
        if (!c.is_finite() || c.abs() > range) throw Error(ErrorKind::NumericRange, "iterate left the numeric range", "masser");
      }
      std::vector<Complex> ft;
      try {
        ft = rhs.value(trial, &f);
      } catch (const Singular&) {
        singular = true;
        continue;
      }
      std::vector<Complex> gt = g_value(trial, ft, shift);
      Real gtn = max_abs(gt);
      if (gtn < gn) {
        z = std::move(trial);
        f = std::move(ft);
        g = std::move(gt);
        gn = std::move(gtn);
        return true;
      }
    }
    if (singular) throw Error(ErrorKind::LogSingularity, "right-hand side entered the disc around 0", "masser");
    return false;
  };

  std::size_t fp_steps = 0;
  while (iter < options.max_iter && gn > switch_level) {
    ++iter;
    ++fp_steps;
    if (!damped(g)) break;
  }
  out.stage_log.push_back("fixed-point: " + std::to_string(fp_steps) + " steps, |G| = " + short_num(gn));

  std::size_t newton_steps = 0;
  while (iter < options.max_iter && gn > target * max(Real(1L, prec), max_abs(z))) {
    ++iter;
    ++newton_steps;
    const CMatrix df = rhs.jacobian(z, f);
    CMatrix j(n, n, prec);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) j(a, b) = -(df(a, b) / f[a]);
      j(a, a) += Complex(Real(1L, prec), Real(0L, prec));
    }
    std::vector<Complex> step;
    try {
      step = solve_linear(j, g);
    } catch (const Error&) {
      step = pinv_solve(j, g);
    }
    if (!damped(step)) break;
  }
  out.stage_log.push_back("newton: " + std::to_string(newton_steps) + " steps, |G| = " + short_num(gn));
  out.iterations = iter;

  out.z = z;
  out.y = f;
  Real rexp(0L, prec);
  for (std::size_t i = 0; i < n; ++i) rexp = max(rexp, (exp(z[i]) - f[i]).abs());
  out.residual_exp = rexp;
  out.residual_var = rhs.var_residual(out.z, out.y);
  out.stage_log.push_back("residual_exp = " + short_num(out.residual_exp) + ", residual_var = " +
                          short_num(out.residual_var));
  if (!(out.residual_exp <= tol) || !(out.residual_var <= tol)) {
    throw Error(ErrorKind::NoConvergence,
                "no convergence after " + std::to_string(iter) + " iterations (residual " + short_num(rexp) + ")",
                "masser");
  }
  return out;
}

}  // namespace

SolutionPoint solve_masser_poly(const std::vector<MultiPoly>& p, const Seed& seed, const SolveOptions& options) {
  const std::size_t n = p.size();
  if (n == 0) throw Error(ErrorKind::Arity, "empty system", "masser");
  for (const MultiPoly& q : p) {
    if (q.num_vars() != n) throw Error(ErrorKind::Arity, "each P_i must have n variables", "masser");
    if (q.is_zero()) throw Error(ErrorKind::Arity, "each P_i must be nonzero", "masser");
  }
  try {
    validate_seed(seed, n);
  } catch (const Error& e) {
    throw e.in_stage("masser");
  }
  const PolyRhs rhs(p, options.precision);
  return run_engine(rhs, n, seed, options);
}

SolutionPoint solve_masser_algebraic(const TriangularSystem& t, const Seed& seed, const SolveOptions& options) {
  try {
    t.validate();
    validate_seed(seed, t.n, t.degrees_in_u());
  } catch (const Error& e) {
    throw e.in_stage("masser");
  }
  const AlgebraicRhs rhs(t, seed.branch, options.precision);
  return run_engine(rhs, t.n, seed, options);
}

PreparedVariety prepare_variety(const ExpVariety& v, const VarietySolveOptions& options) {
  v.validate();
  const Precision prec = options.solve.precision;
  PreparedVariety out;
  out.variety = v;
  out.hypotheses = check_hypotheses(v, options.samples, options.rng_seed, prec);
  const HypothesisReport& h = out.hypotheses;
  if (options.enforce_hypotheses) {
    if (!h.dimension_ok(v.n)) {
      throw Error(ErrorKind::DimensionHypothesis,
                  "dimension estimate " + std::to_string(h.dim_estimate) + " differs from n = " + std::to_string(v.n),
                  "check");
    }
    if (!h.pi1_dominant) throw Error(ErrorKind::DominanceHypothesis, "first projection is not dominant", "check");
    if (options.require_both_dominant && !h.pi2_dominant) {
      throw Error(ErrorKind::DominanceHypothesis, "second projection is not dominant", "check");
    }
  }
  out.witness = sample_point(v, Rng::derive(options.rng_seed, 1000).next(), prec);
  out.triangular = triangularize(v, out.witness, prec, options.triangularize);
  return out;
}

SolutionPoint solve_prepared(const PreparedVariety& prepared, const Seed& seed, const SolveOptions& options) {
  SolutionPoint s = solve_masser_algebraic(prepared.triangular, seed, options);
  std::vector<Complex> point = s.z;
  point.insert(point.end(), s.y.begin(), s.y.end());
  s.residual_var = max_generator_residual(prepared.variety, point);
  s.stage_log.insert(s.stage_log.begin(), "triangular system from witness");
  s.stage_log.push_back("generator residual = " + short_num(s.residual_var));
  if (!(s.residual_var <= s.tolerance)) {
    throw Error(ErrorKind::ExtraneousComponent,
                "solution does not satisfy the original generators (residual " + short_num(s.residual_var) + ")",
                "verify");
  }
  return s;
}

SolutionPoint solve_on_variety(const ExpVariety& v, const Seed& seed, const VarietySolveOptions& options) {
  const PreparedVariety prepared = prepare_variety(v, options);
  return solve_prepared(prepared, seed, options.solve);
}

}  // namespace expclose
