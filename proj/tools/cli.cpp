#include "cli.hpp"

#include "expclose/errors.hpp"
#include "expclose/masser.hpp"
#include "expclose/triangularize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace expclose::cli {

namespace {

Error config_error(const std::string& message) { return Error(ErrorKind::Config, message, "config"); }

mpz_class parse_integer(const std::string& text, const std::string& what) {
  mpz_class z;
  if (text.empty() || z.set_str(text, 10) != 0) throw config_error(what + " must be an integer, got '" + text + "'");
  return z;
}

long parse_long(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw config_error(what + " must be an integer, got '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, path + ": cannot read file", "parse");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) { return parse_json_text(read_file(path), path); }

// A bare record, or the `result` of a report envelope.
const Json& record_of(const Json& j) {
  if (j.is_object() && j.contains("result") && j["result"].is_object()) return j["result"];
  return j;
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object() && j.size() == 2 && j.contains("re") && j.contains("im") && j["re"].is_string()) {
    out << prefix << " = " << j["re"].get<std::string>() << " + " << j["im"].get<std::string>() << "*i\n";
    return;
  }
  if (j.is_object()) {
    if (j.empty()) out << prefix << " = {}\n";
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array()) {
    bool scalar = true;
    for (const auto& v : j) scalar = scalar && !v.is_structured();
    if (scalar) {
      out << prefix << " = [";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out << (i ? ", " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      }
      out << "]\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

void emit(const Json& report, const RunConfig& config, std::ostream& out) {
  if (config.format == "text") {
    flatten(report, "", out);
  } else {
    out << report.dump(2) << "\n";
  }
}

Json envelope(const std::string& command, const RunConfig& config) {
  Json j;
  j["command"] = command;
  j["config"] = to_json(config);
  return j;
}

VarietySolveOptions variety_options(const RunConfig& c) {
  VarietySolveOptions o;
  o.solve.precision = c.precision_bits;
  o.solve.max_iter = c.max_iter;
  o.solve.tol = c.tolerance();
  o.samples = c.samples;
  o.rng_seed = c.rng_seed;
  o.require_both_dominant = c.require_both_dominant;
  return o;
}

std::size_t system_n(const SystemInput& s) { return s.form == InputForm::Variety ? s.variety.n : s.triangular.n; }

int cmd_check(const SystemInput& input, const RunConfig& c, Json& report) {
  if (input.form != InputForm::Variety) throw config_error("check needs a variety input (form 'variety')");
  const ExpVariety& v = input.variety;
  const HypothesisReport h = check_hypotheses(v, c.samples, c.rng_seed, c.precision_bits);
  std::string failure;
  if (!h.dimension_ok(v.n)) {
    failure = "dimension estimate " + std::to_string(h.dim_estimate) + " differs from n = " + std::to_string(v.n);
  } else if (!h.pi1_dominant) {
    failure = "first projection is not dominant";
  } else if (c.require_both_dominant && !h.pi2_dominant) {
    failure = "second projection is not dominant";
  }
  report["result"] = to_json(h);
  report["gate"] = Json{{"passed", failure.empty()}, {"reason", failure}};
  return failure.empty() ? kOk : kGate;
}

int cmd_triangularize(const SystemInput& input, const RunConfig& c, Json& report) {
  if (input.form != InputForm::Variety) throw config_error("triangularize needs a variety input (form 'variety')");
  const PreparedVariety p = prepare_variety(input.variety, variety_options(c));
  SystemInput t;
  t.form = InputForm::Triangular;
  t.triangular = p.triangular;
  Json result;
  result["record"] = "triangularization";
  result["system"] = to_json(t);
  result["degrees_in_u"] = p.triangular.degrees_in_u();
  result["fiber_bound"] = fiber_bound(p.triangular);
  Json witness = Json::array();
  for (const Complex& x : p.witness.coords) {
    witness.push_back(Json{{"re", x.re().with_precision(c.precision_bits).to_string()},
                           {"im", x.im().with_precision(c.precision_bits).to_string()}});
  }
  result["precision_bits"] = c.precision_bits;
  result["witness"] = witness;
  result["hypotheses"] = to_json(p.hypotheses);
  report["result"] = result;
  return kOk;
}

int cmd_solve(const SystemInput& input, const RunConfig& c, Json& report) {
  const std::size_t n = system_n(input);
  Seed seed{c.seed.empty() ? std::vector<long>(n, 1) : c.seed, c.branch};
  if (seed.k.size() != n) {
    throw Error(ErrorKind::InvalidSeed,
                "seed has " + std::to_string(seed.k.size()) + " entries for n = " + std::to_string(n), "config");
  }
  const VarietySolveOptions o = variety_options(c);
  const SolutionPoint s = input.form == InputForm::Variety ? solve_on_variety(input.variety, seed, o)
                                                           : solve_masser_algebraic(input.triangular, seed, o.solve);
  report["result"] = to_json(s);
  return kOk;
}

int cmd_audit(const Json& record, const RunConfig& c, Json& report) {
  const SolutionPoint s = solution_from_json(record_of(record));
  if (s.z.empty()) throw Error(ErrorKind::Parse, "z: no coordinates", "parse");
  report["result"] = to_json(audit(s, c.height_bound, c.precision_bits));
  return kOk;
}

int cmd_sweep(const SystemInput& input, const RunConfig& c, Json& report) {
  const std::size_t n = system_n(input);
  SweepPlan plan;
  plan.seed_box = parse_seed_box(c.seed_box, n);
  plan.branch_policy = branch_policy_from_string(c.branch_policy);
  plan.budget = c.budget;
  plan.height_bound = c.height_bound;
  plan.density_degree = c.density_degree;
  plan.override_hypotheses = c.override_hypotheses;
  plan.threads = c.threads;
  SweepContext ctx;
  ctx.solve = variety_options(c);
  const SweepResult r = input.form == InputForm::Variety ? sweep(input.variety, plan, ctx)
                                                         : sweep(input.triangular, plan, ctx);
  report["result"] = to_json(r);
  return r.outcome == SweepOutcome::Ok ? kOk : kSolver;
}

}  // namespace

void RunConfig::validate() const {
  if (precision_bits < 64) throw config_error("precision_bits must be at least 64, got " + std::to_string(precision_bits));
  if (height_bound < 1) throw config_error("height_bound must be at least 1, got " + height_bound.get_str());
  if (format != "json" && format != "text") throw config_error("format must be 'json' or 'text', got '" + format + "'");
  if (max_iter == 0) throw config_error("max_iter must be at least 1");
  if (samples == 0) throw config_error("samples must be at least 1");
  if (threads == 0) throw config_error("threads must be at least 1");
  if (budget == 0) throw config_error("budget must be at least 1");
  branch_policy_from_string(branch_policy);
  if (const auto t = tolerance()) {
    if (!(t->sign() > 0 && *t < Real(1L, precision_bits))) throw config_error("tol must lie in (0, 1), got " + tol);
  }
}

std::optional<Real> RunConfig::tolerance() const {
  if (tol == "auto") return std::nullopt;
  try {
    return Real::parse(tol, precision_bits);
  } catch (const Error&) {
    throw config_error("tol must be 'auto' or a decimal, got '" + tol + "'");
  }
}

Json to_json(const RunConfig& c) {
  Json j;
  j["precision_bits"] = c.precision_bits;
  j["tol"] = c.tol;
  j["height_bound"] = c.height_bound.get_str();
  j["rng_seed"] = c.rng_seed;
  j["max_iter"] = c.max_iter;
  j["format"] = c.format;
  j["samples"] = c.samples;
  j["require_both_dominant"] = c.require_both_dominant;
  j["seed"] = c.seed;
  j["branch"] = c.branch;
  j["seed_box"] = c.seed_box;
  j["budget"] = c.budget;
  j["density_degree"] = c.density_degree ? Json(*c.density_degree) : Json();
  j["override_hypotheses"] = c.override_hypotheses;
  j["threads"] = c.threads;
  j["branch_policy"] = c.branch_policy;
  return j;
}

RunConfig config_from_json(const Json& j, RunConfig base) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "config: expected an object", "parse");
  auto field = [&](const char* key, auto& target) {
    const auto it = j.find(key);
    if (it == j.end()) return;
    try {
      using T = std::decay_t<decltype(target)>;
      if constexpr (std::is_same_v<T, mpz_class>) {
        target = parse_integer(it->is_string() ? it->template get<std::string>() : it->dump(), key);
      } else if constexpr (std::is_same_v<T, std::optional<unsigned>>) {
        target = it->is_null() ? std::nullopt : std::optional<unsigned>(it->template get<unsigned>());
      } else {
        target = it->template get<T>();
      }
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorKind::Parse, std::string("config.") + key + ": wrong type", "parse");
    }
  };
  field("precision_bits", base.precision_bits);
  field("tol", base.tol);
  field("height_bound", base.height_bound);
  field("rng_seed", base.rng_seed);
  field("max_iter", base.max_iter);
  field("format", base.format);
  field("samples", base.samples);
  field("require_both_dominant", base.require_both_dominant);
  field("seed", base.seed);
  field("branch", base.branch);
  field("seed_box", base.seed_box);
  field("budget", base.budget);
  field("density_degree", base.density_degree);
  field("override_hypotheses", base.override_hypotheses);
  field("threads", base.threads);
  field("branch_policy", base.branch_policy);
  return base;
}

std::vector<SeedRange> parse_seed_box(const std::string& text, std::size_t n) {
  std::vector<SeedRange> box;
  for (const std::string& part : split(text, ',')) {
    const std::size_t dots = part.find("..", 1);
    if (dots == std::string::npos) throw config_error("seed range must read lo..hi, got '" + part + "'");
    box.push_back(SeedRange{parse_long(part.substr(0, dots), "seed range bound"),
                            parse_long(part.substr(dots + 2), "seed range bound")});
  }
  if (box.size() == 1 && n > 1) box.assign(n, box.front());
  return box;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionHypothesis:
    case ErrorKind::DominanceHypothesis:
      return kGate;
    case ErrorKind::NoConvergence:
    case ErrorKind::CoordinateHyperplane:
    case ErrorKind::NoSample:
    case ErrorKind::RankUnstable:
    case ErrorKind::EliminationCollapsed:
    case ErrorKind::AllFactorsExtraneous:
    case ErrorKind::LogSingularity:
    case ErrorKind::NumericRange:
    case ErrorKind::BranchCollision:
    case ErrorKind::SingularLeadingCoefficient:
    case ErrorKind::ExtraneousComponent:
    case ErrorKind::TermLimit:
      return kSolver;
    case ErrorKind::Arity:
    case ErrorKind::Parse:
    case ErrorKind::Config:
    case ErrorKind::DegreeZero:
    case ErrorKind::InvalidSeed:
    case ErrorKind::PrecisionTooLow:
    case ErrorKind::ZeroMatrix:
    case ErrorKind::EmptyPlan:
      return kInput;
    case ErrorKind::NotDivisible:
      return kOther;
  }
  return kOther;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solve exponential-polynomial systems on algebraic varieties and audit the solutions for genericity"};
  app.name("expclose");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string precision_text;
  std::string tol_text;
  std::string height_text;
  std::uint64_t rng_seed = 0;
  std::size_t max_iter = 0;
  std::size_t samples = 0;
  std::string format;
  bool require_both = false;
  app.add_option("--config", config_path, "JSON config (a report's config echo or the echo object itself)");
  auto* o_prec = app.add_option("--precision-bits", precision_text, "Working precision in bits (default 256)");
  auto* o_tol = app.add_option("--tol", tol_text, "Convergence tolerance, or 'auto' for 2^{-precision/2}");
  auto* o_height = app.add_option("--height-bound", height_text, "Height bound H for relation search (default 100)");
  auto* o_rng = app.add_option("--rng-seed", rng_seed, "Seed for sampling (default 0)");
  auto* o_iter = app.add_option("--max-iter", max_iter, "Solver iteration limit (default 500)");
  auto* o_samples = app.add_option("--samples", samples, "Sample points for hypothesis checks (default 5)");
  auto* o_format = app.add_option("--format", format, "Output format: json or text (default json)");
  auto* o_both = app.add_flag("--require-both-dominant", require_both, "Also require the second projection dominant");

  std::string input_path;
  std::string seed_text;
  std::string branch_text;
  std::string box_text;
  std::size_t budget = 0;
  unsigned density = 0;
  std::string out_path;
  bool override_hyp = false;
  std::size_t threads = 0;
  std::string policy;

  auto* check = app.add_subcommand("check", "Estimate dim V and test dominance of both projections");
  check->add_option("input", input_path, "Variety file")->required();
  auto* tri = app.add_subcommand("triangularize", "Reduce a variety to per-coordinate polynomials p_i(x, u)");
  tri->add_option("input", input_path, "Variety file")->required();
  auto* solve = app.add_subcommand("solve", "Solve e^z = f(z) on a variety or triangular system from a seed");
  solve->add_option("input", input_path, "Variety or triangular system file")->required();
  auto* o_seed = solve->add_option("--seed", seed_text, "Comma-separated nonzero integers k (default all 1)");
  auto* o_branch = solve->add_option("--branch", branch_text, "Comma-separated root indices (default all 0)");
  auto* aud = app.add_subcommand("audit", "Search a solution record for integer relations");
  aud->add_option("input", input_path, "Solution record or solve report")->required();
  auto* swp = app.add_subcommand("sweep", "Solve over a seed box, excluding witnessed tori");
  swp->add_option("input", input_path, "Variety or triangular system file")->required();
  auto* o_box = swp->add_option("--seed-box", box_text, "lo..hi for every coordinate, or one range per coordinate");
  auto* o_budget = swp->add_option("--budget", budget, "Maximum number of seeds (default 200)");
  auto* o_density = swp->add_option("--density-degree", density, "Degree for monomial-rank density evidence");
  swp->add_option("--out", out_path, "Also write the JSON report to this file");
  auto* o_override = swp->add_flag("--override-hypotheses", override_hyp, "Sweep even when the hypothesis gate fails");
  auto* o_threads = swp->add_option("--threads", threads, "Worker threads (default 1)");
  auto* o_policy = swp->add_option("--branch-policy", policy, "first or all (default first)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "expclose: " << e.what() << "\n";
    return kInput;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  RunConfig config;
  try {
    if (const char* env = std::getenv("EXPCLOSE_PRECISION_BITS"); env != nullptr && *env != '\0') {
      config.precision_bits = static_cast<Precision>(parse_long(env, "EXPCLOSE_PRECISION_BITS"));
    }
    if (!config_path.empty()) {
      const Json j = read_json_file(config_path);
      config = config_from_json(j.is_object() && j.contains("config") ? j["config"] : j, config);
    }
    if (o_prec->count()) config.precision_bits = static_cast<Precision>(parse_long(precision_text, "--precision-bits"));
    if (o_tol->count()) config.tol = tol_text;
    if (o_height->count()) config.height_bound = parse_integer(height_text, "--height-bound");
    if (o_rng->count()) config.rng_seed = rng_seed;
    if (o_iter->count()) config.max_iter = max_iter;
    if (o_samples->count()) config.samples = samples;
    if (o_format->count()) config.format = format;
    if (o_both->count()) config.require_both_dominant = require_both;
    if (o_seed->count()) {
      config.seed.clear();
      for (const auto& s : split(seed_text, ',')) config.seed.push_back(parse_long(s, "--seed"));
    }
    if (o_branch->count()) {
      config.branch.clear();
      for (const auto& s : split(branch_text, ',')) {
        const long b = parse_long(s, "--branch");
        if (b < 0) throw config_error("--branch entries must be non-negative");
        config.branch.push_back(static_cast<std::size_t>(b));
      }
    }
    if (o_box->count()) config.seed_box = box_text;
    if (o_budget->count()) config.budget = budget;
    if (o_density->count()) config.density_degree = density;
    if (o_override->count()) config.override_hypotheses = override_hyp;
    if (o_threads->count()) config.threads = threads;
    if (o_policy->count()) config.branch_policy = policy;
    config.validate();
  } catch (const Error& e) {
    err << "expclose: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  }

  Json report = envelope(command, config);
  int status = kOk;
  try {
    const Json doc = read_json_file(input_path);
    if (command == "audit") {
      status = cmd_audit(doc, config, report);
    } else {
      const SystemInput input = system_from_json(doc);
      report["input"] = to_json(input);
      if (command == "check") status = cmd_check(input, config, report);
      if (command == "triangularize") status = cmd_triangularize(input, config, report);
      if (command == "solve") status = cmd_solve(input, config, report);
      if (command == "sweep") status = cmd_sweep(input, config, report);
    }
  } catch (const Error& e) {
    status = exit_code_for(e.kind());
    report["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"stage", e.stage()}, {"message", e.what()}};
    err << "expclose: " << to_string(e.kind()) << (e.stage().empty() ? "" : " (" + e.stage() + ")") << ": "
        << e.what() << "\n";
  } catch (const std::exception& e) {
    status = kOther;
    report["error"] = Json{{"kind", "internal"}, {"stage", ""}, {"message", e.what()}};
    err << "expclose: " << e.what() << "\n";
  }
  report["exit_status"] = status;
  emit(report, config, out);
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "expclose: cannot write " << out_path << "\n";
      return kOther;
    }
    f << report.dump(2) << "\n";
  }
  return status;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"expclose"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace expclose::cli
