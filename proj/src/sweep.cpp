#include "expclose/sweep.hpp"

#include "expclose/errors.hpp"
#include "expclose/numlinalg.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <thread>

namespace expclose {

void SweepPlan::validate(std::size_t n) const {
  if (seed_box.empty()) throw Error(ErrorKind::EmptyPlan, "seed box is empty", "plan");
  if (seed_box.size() != n) {
    throw Error(ErrorKind::Arity,
                "seed box has " + std::to_string(seed_box.size()) + " ranges for n = " + std::to_string(n), "plan");
  }
  for (std::size_t i = 0; i < seed_box.size(); ++i) {
    const SeedRange& r = seed_box[i];
    if (r.lo > r.hi || (r.lo == 0 && r.hi == 0)) {
      throw Error(ErrorKind::EmptyPlan,
                  "seed range " + std::to_string(i + 1) + " holds no nonzero integer", "plan");
    }
  }
  if (budget == 0) throw Error(ErrorKind::Config, "budget must be at least 1", "plan");
  if (threads == 0) throw Error(ErrorKind::Config, "threads must be at least 1", "plan");
}

std::vector<std::vector<long>> enumerate_seeds(const std::vector<SeedRange>& box) {
  std::vector<std::vector<long>> out;
  if (box.empty()) return out;
  std::vector<long> cur(box.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == box.size()) {
      out.push_back(cur);
      return;
    }
    for (long k = box[i].lo; k <= box[i].hi; ++k) {
      if (k == 0) continue;
      cur[i] = k;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<unsigned>> monomials_up_to(std::size_t vars, unsigned degree) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(vars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 >= vars) {
      if (vars > 0) cur[vars - 1] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
  };
  for (unsigned d = 0; d <= degree; ++d) {
    if (vars == 0 && d > 0) break;
    rec(0, d);
  }
  return out;
}

DensityEvidence density_evidence(const std::vector<SolutionPoint>& solutions, unsigned degree, DensitySpace space) {
  if (solutions.empty()) throw Error(ErrorKind::Config, "density evidence needs at least one solution", "density");
  const std::size_t n = solutions.front().z.size();
  Precision prec = solutions.front().precision_bits;
  for (const SolutionPoint& s : solutions) {
    if (s.z.size() != n || s.y.size() != n) throw Error(ErrorKind::Arity, "solutions differ in arity", "density");
    prec = std::min(prec, s.precision_bits);
  }
  const std::size_t vars = space == DensitySpace::Graph ? 2 * n : n;
  const auto monomials = monomials_up_to(vars, degree);

  CMatrix a(solutions.size(), monomials.size(), prec);
  for (std::size_t r = 0; r < solutions.size(); ++r) {
    std::vector<Complex> point;
    for (const Complex& c : solutions[r].z) point.push_back(c.with_precision(prec));
    if (space == DensitySpace::Graph) {
      for (const Complex& c : solutions[r].y) point.push_back(c.with_precision(prec));
    }
    for (std::size_t c = 0; c < monomials.size(); ++c) {
      Complex v(Real(1L, prec), Real(0L, prec));
      for (std::size_t j = 0; j < vars; ++j) {
        if (monomials[c][j] != 0) v *= pow(point[j], static_cast<std::uint64_t>(monomials[c][j]));
      }
      a(r, c) = v;
    }
  }
  for (std::size_t c = 0; c < a.cols(); ++c) {
    Real norm(0L, prec);
    for (std::size_t r = 0; r < a.rows(); ++r) norm += a(r, c).norm2();
    norm = sqrt(norm);
    if (norm.is_zero()) continue;
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, c) = a(r, c) * (Real(1L, prec) / norm);
  }

  DensityEvidence e;
  e.solutions = solutions.size();
  e.degree = degree;
  e.space = space;
  e.monomial_count = monomials.size();
  e.monomial_rank = numerical_rank(a);
  if (solutions.size() < monomials.size()) {
    e.inconclusive = true;
    e.reason = std::to_string(solutions.size()) + " solutions for " + std::to_string(monomials.size()) +
               " monomials of degree <= " + std::to_string(degree);
  } else {
    e.full = e.monomial_rank == monomials.size();
    e.reason = e.full ? "no polynomial of degree <= " + std::to_string(degree) + " vanishes on the solutions"
                      : "rank " + std::to_string(e.monomial_rank) + " of " + std::to_string(monomials.size()) +
                            ": some polynomial of degree <= " + std::to_string(degree) + " vanishes on the solutions";
  }
  return e;
}

namespace {

struct TaskOutcome {
  std::optional<SolutionPoint> solution;
  std::optional<GenericityReport> audit;
  std::optional<Error> error;
  std::exception_ptr fatal;
};

std::vector<Seed> build_tasks(const SweepPlan& plan, const std::vector<std::uint32_t>& degrees) {
  std::vector<std::vector<std::size_t>> branches{{}};
  if (plan.branch_policy == BranchPolicy::All) {
    branches = {std::vector<std::size_t>(degrees.size(), 0)};
    for (std::size_t i = degrees.size(); i-- > 0;) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& b : branches) {
        for (std::size_t r = 0; r < degrees[i]; ++r) {
          auto c = b;
          c[i] = r;
          next.push_back(std::move(c));
        }
      }
      branches = std::move(next);
    }
    std::sort(branches.begin(), branches.end());
  }
  std::vector<Seed> tasks;
  for (const auto& k : enumerate_seeds(plan.seed_box)) {
    for (const auto& b : branches) tasks.push_back(Seed{k, b});
  }
  const std::size_t limit = plan.budget * branches.size();
  if (tasks.size() > limit) tasks.resize(limit);
  return tasks;
}

SweepResult run_sweep(const SweepPlan& plan, const SweepContext& context, std::size_t n,
                      const std::vector<std::uint32_t>& degrees,
                      const std::function<SolutionPoint(const Seed&)>& solve) {
  const Precision prec = context.solve.solve.precision;
  check_relation_precision(plan.height_bound, prec);
  const std::vector<Seed> tasks = build_tasks(plan, degrees);

  std::vector<TaskOutcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      TaskOutcome& o = outcomes[i];
      try {
        o.solution = solve(tasks[i]);
        o.audit = audit(*o.solution, plan.height_bound, prec);
      } catch (const Error& e) {
        o.error = e;
      } catch (...) {
        o.fatal = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(plan.threads, std::max<std::size_t>(tasks.size(), 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepResult out;
  out.tori = plan.excluded_tori;
  out.seeds_tried = tasks.size();
  const Real tol = relation_threshold(n, plan.height_bound, prec);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    TaskOutcome& o = outcomes[i];
    if (o.fatal) std::rethrow_exception(o.fatal);
    if (o.error) {
      out.rejected.push_back(RejectedSeed{tasks[i], o.error->stage().empty() ? "solve" : o.error->stage(),
                                          std::string(to_string(o.error->kind())) + ": " + o.error->what(),
                                          std::nullopt, o.solution, std::nullopt});
      continue;
    }
    std::optional<std::size_t> hit;
    for (std::size_t t = 0; t < out.tori.size() && !hit; ++t) {
      if (on_torus(out.tori[t], o.solution->z, tol)) hit = t;
    }
    if (hit) {
      out.rejected.push_back(RejectedSeed{tasks[i], "exclusion", "solution lies on excluded torus " + std::to_string(*hit),
                                          hit, std::move(o.solution), std::move(o.audit)});
      continue;
    }
    if (o.audit->verdict == Verdict::RelationsFound) {
      const GenericityReport& a = *o.audit;
      std::size_t pick = 0;
      for (std::size_t r = 0; r < a.relations.size(); ++r) {
        if (a.relations[r].kind == RelationKind::Multiplicative) pick = r;
      }
      const Torus& t = a.tori[pick];
      std::size_t index = out.tori.size();
      for (std::size_t j = 0; j < out.tori.size(); ++j) {
        if (out.tori[j].identity_component == t.identity_component) index = j;
      }
      if (index == out.tori.size()) out.tori.push_back(t);
      out.rejected.push_back(RejectedSeed{tasks[i], "audit", "integer relations found; torus " + std::to_string(index) +
                                                                  " excluded",
                                          index, std::move(o.solution), std::move(o.audit)});
      continue;
    }
    out.solutions.push_back(AcceptedSolution{std::move(*o.solution), std::move(*o.audit)});
  }
  out.outcome = out.solutions.empty() ? SweepOutcome::NoGenericSolution : SweepOutcome::Ok;
  if (plan.density_degree && !out.solutions.empty()) {
    std::vector<SolutionPoint> pts;
    for (const auto& s : out.solutions) pts.push_back(s.solution);
    out.density = density_evidence(pts, *plan.density_degree);
  }
  return out;
}

}  // namespace

SweepResult sweep(const ExpVariety& v, const SweepPlan& plan, const SweepContext& context) {
  v.validate();
  plan.validate(v.n);
  VarietySolveOptions options = context.solve;
  options.require_both_dominant = true;
  options.enforce_hypotheses = !plan.override_hypotheses;
  const PreparedVariety prepared = prepare_variety(v, options);
  SweepResult out = run_sweep(plan, context, v.n, prepared.triangular.degrees_in_u(),
                              [&](const Seed& s) { return solve_prepared(prepared, s, options.solve); });
  out.hypotheses = prepared.hypotheses;
  out.hypotheses_overridden = plan.override_hypotheses;
  return out;
}

SweepResult sweep(const TriangularSystem& t, const SweepPlan& plan, const SweepContext& context) {
  t.validate();
  plan.validate(t.n);
  return run_sweep(plan, context, t.n, t.degrees_in_u(),
                   [&](const Seed& s) { return solve_masser_algebraic(t, s, context.solve.solve); });
}

}  // namespace expclose
