#include "cli.hpp"
#include "expclose/errors.hpp"
#include "expclose/serialize.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace expclose;

namespace {

SystemInput load(const std::string& text) { return system_from_json(parse_json_text(text, "input")); }

VarietySolveOptions options(Precision precision, std::size_t max_iter, std::size_t samples, std::uint64_t rng_seed,
                            bool require_both_dominant) {
  VarietySolveOptions o;
  o.solve.precision = precision;
  o.solve.max_iter = max_iter;
  o.samples = samples;
  o.rng_seed = rng_seed;
  o.require_both_dominant = require_both_dominant;
  return o;
}

std::string check(const std::string& input, Precision precision, std::size_t samples, std::uint64_t rng_seed) {
  const SystemInput s = load(input);
  if (s.form != InputForm::Variety) throw Error(ErrorKind::Config, "check needs a variety input", "config");
  return to_json(check_hypotheses(s.variety, samples, rng_seed, precision)).dump();
}

std::string triangularize_variety(const std::string& input, Precision precision, std::size_t samples,
                                  std::uint64_t rng_seed) {
  const SystemInput s = load(input);
  if (s.form != InputForm::Variety) throw Error(ErrorKind::Config, "triangularize needs a variety input", "config");
  SystemInput t;
  t.form = InputForm::Triangular;
  t.triangular = prepare_variety(s.variety, options(precision, 500, samples, rng_seed, false)).triangular;
  return to_json(t).dump();
}

std::string solve(const std::string& input, const std::vector<long>& k, const std::vector<std::size_t>& branch,
                  Precision precision, std::size_t max_iter, std::size_t samples, std::uint64_t rng_seed,
                  bool require_both_dominant) {
  const SystemInput s = load(input);
  const Seed seed{k, branch};
  const VarietySolveOptions o = options(precision, max_iter, samples, rng_seed, require_both_dominant);
  return to_json(s.form == InputForm::Variety ? solve_on_variety(s.variety, seed, o)
                                              : solve_masser_algebraic(s.triangular, seed, o.solve))
      .dump();
}

std::string audit_solution(const std::string& solution, long height_bound, Precision precision) {
  return to_json(audit(solution_from_json(parse_json_text(solution, "solution")), height_bound, precision)).dump();
}

std::string sweep_system(const std::string& input, const std::vector<std::pair<long, long>>& box, std::size_t budget,
                         long height_bound, std::optional<unsigned> density_degree, const std::string& branch_policy,
                         bool override_hypotheses, std::size_t threads, Precision precision, std::uint64_t rng_seed) {
  const SystemInput s = load(input);
  SweepPlan plan;
  for (const auto& [lo, hi] : box) plan.seed_box.push_back(SeedRange{lo, hi});
  plan.budget = budget;
  plan.height_bound = height_bound;
  plan.density_degree = density_degree;
  plan.branch_policy = branch_policy_from_string(branch_policy);
  plan.override_hypotheses = override_hypotheses;
  plan.threads = threads;
  SweepContext ctx;
  ctx.solve = options(precision, 500, 5, rng_seed, false);
  py::gil_scoped_release release;
  const SweepResult r = s.form == InputForm::Variety ? sweep(s.variety, plan, ctx) : sweep(s.triangular, plan, ctx);
  return to_json(r).dump();
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(args, out, err);
  return py::make_tuple(status, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_expclose, m) {
  m.doc() = "Exponential-polynomial systems on varieties: solving and genericity audits (JSON records in and out)";

  static py::exception<Error> error(m, "ExpcloseError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(to_string(e.kind())), e.stage(), std::string(e.what()));
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def("check", &check, py::arg("input"), py::arg("precision_bits") = 256, py::arg("samples") = 5,
        py::arg("rng_seed") = 0, "Hypothesis report for a variety input");
  m.def("triangularize", &triangularize_variety, py::arg("input"), py::arg("precision_bits") = 256,
        py::arg("samples") = 5, py::arg("rng_seed") = 0, "Triangular system for a variety input");
  m.def("solve", &solve, py::arg("input"), py::arg("seed"), py::arg("branch") = std::vector<std::size_t>{},
        py::arg("precision_bits") = 256, py::arg("max_iter") = 500, py::arg("samples") = 5, py::arg("rng_seed") = 0,
        py::arg("require_both_dominant") = false, "Solution record for one seed");
  m.def("audit", &audit_solution, py::arg("solution"), py::arg("height_bound") = 100,
        py::arg("precision_bits") = 256, "Genericity report for a solution record");
  m.def("sweep", &sweep_system, py::arg("input"), py::arg("seed_box"), py::arg("budget") = 200,
        py::arg("height_bound") = 100, py::arg("density_degree") = py::none(), py::arg("branch_policy") = "first",
        py::arg("override_hypotheses") = false, py::arg("threads") = 1, py::arg("precision_bits") = 256,
        py::arg("rng_seed") = 0, "Sweep result over a seed box");
  m.def("run_cli", &run_cli, py::arg("args"), "Runs the command line; returns (status, stdout, stderr)");
}
