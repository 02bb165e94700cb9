#include "expclose/serialize.hpp"

#include "expclose/errors.hpp"
#include "expclose/poly_text.hpp"

#include <algorithm>

namespace expclose {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::Parse, (path.empty() ? std::string("record") : path) + ": " + what, "parse");
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& at(const Json& j, const std::string& path, std::string_view key) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(join(path, key), "missing");
  return *it;
}

const Json* find(const Json& j, std::string_view key) {
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

const Json& array_at(const Json& j, const std::string& path, std::string_view key) {
  const Json& a = at(j, path, key);
  if (!a.is_array()) fail(join(path, key), "expected an array");
  return a;
}

std::string string_of(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::string string_at(const Json& j, const std::string& path, std::string_view key) {
  return string_of(at(j, path, key), join(path, key));
}

std::uint64_t uint_of(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0)) {
    fail(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::uint64_t uint_at(const Json& j, const std::string& path, std::string_view key) {
  return uint_of(at(j, path, key), join(path, key));
}

long long int_of(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

bool bool_at(const Json& j, const std::string& path, std::string_view key) {
  const Json& b = at(j, path, key);
  if (!b.is_boolean()) fail(join(path, key), "expected true or false");
  return b.get<bool>();
}

std::vector<std::string> strings_at(const Json& j, const std::string& path, std::string_view key) {
  const Json& a = array_at(j, path, key);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(string_of(a[i], index(join(path, key), i)));
  return out;
}

Precision precision_at(const Json& j, const std::string& path) {
  const std::uint64_t p = uint_at(j, path, "precision_bits");
  if (p < 2) fail(join(path, "precision_bits"), "must be at least 2");
  return static_cast<Precision>(p);
}

Json real_json(const Real& r, Precision prec) { return r.with_precision(prec).to_string(); }

Real real_of(const Json& j, const std::string& path, Precision prec) {
  const std::string s = string_of(j, path);
  try {
    return Real::parse(s, prec);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

Real real_at(const Json& j, const std::string& path, std::string_view key, Precision prec) {
  return real_of(at(j, path, key), join(path, key), prec);
}

Json complex_json(const Complex& c, Precision prec) {
  return Json{{"re", real_json(c.re(), prec)}, {"im", real_json(c.im(), prec)}};
}

Complex complex_of(const Json& j, const std::string& path, Precision prec) {
  return {real_at(j, path, "re", prec), real_at(j, path, "im", prec)};
}

Json complex_vector_json(const std::vector<Complex>& v, Precision prec) {
  Json a = Json::array();
  for (const Complex& c : v) a.push_back(complex_json(c, prec));
  return a;
}

std::vector<Complex> complex_vector_at(const Json& j, const std::string& path, std::string_view key,
                                       Precision prec) {
  const Json& a = array_at(j, path, key);
  std::vector<Complex> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(complex_of(a[i], index(join(path, key), i), prec));
  return out;
}

mpz_class integer_of(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  const std::string s = string_of(j, path);
  mpz_class z;
  if (s.empty() || z.set_str(s, 10) != 0) fail(path, "expected a decimal integer, got '" + s + "'");
  return z;
}

Json integers_json(const std::vector<mpz_class>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

std::vector<mpz_class> integers_at(const Json& j, const std::string& path, std::string_view key) {
  const Json& a = array_at(j, path, key);
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(integer_of(a[i], index(join(path, key), i)));
  return out;
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(integers_json(m.row(r)));
  return Json{{"cols", m.cols()}, {"rows", rows}};
}

IntMatrix matrix_at(const Json& j, const std::string& path, std::string_view key) {
  const Json& mj = at(j, path, key);
  const std::string p = join(path, key);
  const std::size_t cols = uint_at(mj, p, "cols");
  const Json& rows = array_at(mj, p, "rows");
  std::vector<std::vector<mpz_class>> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string rp = index(join(p, "rows"), r);
    if (!rows[r].is_array()) fail(rp, "expected an array");
    std::vector<mpz_class> row;
    for (std::size_t c = 0; c < rows[r].size(); ++c) row.push_back(integer_of(rows[r][c], index(rp, c)));
    if (row.size() != cols) fail(rp, "expected " + std::to_string(cols) + " entries");
    out.push_back(std::move(row));
  }
  return IntMatrix::from_rows(out, cols);
}

Json seed_json(const Seed& s) {
  Json k = Json::array();
  for (long x : s.k) k.push_back(x);
  Json b = Json::array();
  for (std::size_t x : s.branch) b.push_back(x);
  return Json{{"k", k}, {"branch", b}};
}

Seed seed_at(const Json& j, const std::string& path, std::string_view key) {
  const Json& sj = at(j, path, key);
  const std::string p = join(path, key);
  Seed s;
  const Json& k = array_at(sj, p, "k");
  for (std::size_t i = 0; i < k.size(); ++i) s.k.push_back(static_cast<long>(int_of(k[i], index(join(p, "k"), i))));
  const Json& b = array_at(sj, p, "branch");
  for (std::size_t i = 0; i < b.size(); ++i) s.branch.push_back(uint_of(b[i], index(join(p, "branch"), i)));
  return s;
}

Json polys_json(const std::vector<MultiPoly>& polys) {
  Json gens = Json::array();
  for (const MultiPoly& p : polys) {
    Json terms = Json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
      terms.push_back(Json{{"coeff", it->second.to_string()}, {"exps", it->first}});
    }
    gens.push_back(terms);
  }
  return gens;
}

struct ConstantValue {
  std::string name;
  GaussianRational value;
};

// Coefficient expression in the approximate constants, evaluated exactly.
GaussianRational coefficient_of(const Json& j, const std::string& path, const std::vector<ConstantValue>& consts) {
  if (j.is_number_integer()) return GaussianRational(mpq_class(std::to_string(j.get<long long>())));
  const std::string text = string_of(j, path);
  std::vector<std::string> names;
  std::vector<GaussianRational> values;
  for (const auto& c : consts) {
    names.push_back(c.name);
    values.push_back(c.value);
  }
  try {
    return parse_poly(text, names).eval_exact(values);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

MultiPoly poly_of(const Json& j, const std::string& path, const std::vector<std::string>& var_names,
                  const std::vector<ConstantValue>& consts) {
  const std::size_t nv = var_names.size();
  if (j.is_string()) {
    std::vector<std::string> names = var_names;
    for (const auto& c : consts) names.push_back(c.name);
    MultiPoly full(names.size());
    try {
      full = parse_poly(j.get<std::string>(), names);
    } catch (const Error& e) {
      fail(path, e.what());
    }
    MultiPoly::TermMap terms;
    for (const auto& [exps, coeff] : full.terms()) {
      GaussianRational c = coeff;
      for (std::size_t k = 0; k < consts.size(); ++k) {
        for (std::uint32_t e = 0; e < exps[nv + k]; ++e) c *= consts[k].value;
      }
      Exponents head(exps.begin(), exps.begin() + static_cast<long>(nv));
      terms[head] += c;
    }
    return MultiPoly(nv, terms);
  }
  if (!j.is_array()) fail(path, "expected a term array or a polynomial string");
  MultiPoly::TermMap terms;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tp = index(path, t);
    const GaussianRational c = coefficient_of(at(j[t], tp, "coeff"), join(tp, "coeff"), consts);
    const Json& ej = array_at(j[t], tp, "exps");
    if (ej.size() != nv) {
      fail(join(tp, "exps"), "expected " + std::to_string(nv) + " exponents, got " + std::to_string(ej.size()));
    }
    Exponents exps;
    for (std::size_t k = 0; k < ej.size(); ++k) {
      const std::uint64_t e = uint_of(ej[k], index(join(tp, "exps"), k));
      if (e > 0xffffffffULL) fail(index(join(tp, "exps"), k), "exponent too large");
      exps.push_back(static_cast<std::uint32_t>(e));
    }
    terms[exps] += c;
  }
  return MultiPoly(nv, terms);
}

std::string relation_kind_name(RelationKind k) { return k == RelationKind::Additive ? "additive" : "multiplicative"; }

template <typename E>
E enum_of(const Json& j, const std::string& path, std::string_view key,
          std::initializer_list<std::pair<std::string_view, E>> names) {
  const std::string s = string_at(j, path, key);
  for (const auto& [name, value] : names) {
    if (s == name) return value;
  }
  fail(join(path, key), "unknown value '" + s + "'");
}

Json relation_json(const IntegerRelationMatrix& r, Precision prec) {
  return Json{{"kind", relation_kind_name(r.kind)},
              {"m", matrix_json(r.m)},
              {"offsets", integers_json(r.offsets)},
              {"witness_error", real_json(r.witness_error, prec)}};
}

IntegerRelationMatrix relation_of(const Json& j, const std::string& path, Precision prec) {
  IntegerRelationMatrix r;
  r.kind = enum_of<RelationKind>(j, path, "kind",
                                 {{"additive", RelationKind::Additive}, {"multiplicative", RelationKind::Multiplicative}});
  r.m = matrix_at(j, path, "m");
  r.offsets = integers_at(j, path, "offsets");
  r.witness_error = real_at(j, path, "witness_error", prec);
  return r;
}

Torus torus_of(const Json& j, const std::string& path) {
  Torus t;
  t.m = matrix_at(j, path, "m");
  t.dim = uint_at(j, path, "dim");
  t.identity_component = matrix_at(j, path, "identity_component");
  t.invariant_factors = integers_at(j, path, "invariant_factors");
  return t;
}

SolutionPoint solution_of(const Json& j, const std::string& path) {
  SolutionPoint s;
  s.precision_bits = precision_at(j, path);
  const Precision p = s.precision_bits;
  s.seed = seed_at(j, path, "seed");
  s.z = complex_vector_at(j, path, "z", p);
  s.y = complex_vector_at(j, path, "y", p);
  s.residual_exp = real_at(j, path, "residual_exp", p);
  s.residual_var = real_at(j, path, "residual_var", p);
  s.tolerance = real_at(j, path, "tolerance", p);
  s.iterations = uint_at(j, path, "iterations");
  s.stage_log = strings_at(j, path, "stage_log");
  if (s.z.size() != s.y.size()) fail(join(path, "y"), "length differs from z");
  return s;
}

HypothesisReport hypotheses_of(const Json& j, const std::string& path) {
  HypothesisReport h;
  h.precision_bits = precision_at(j, path);
  h.dim_estimate = static_cast<int>(int_of(at(j, path, "dim_estimate"), join(path, "dim_estimate")));
  h.pi1_dominant = bool_at(j, path, "pi1_dominant");
  h.pi2_dominant = bool_at(j, path, "pi2_dominant");
  h.samples_used = uint_at(j, path, "samples_used");
  h.tolerance = real_at(j, path, "tolerance", h.precision_bits);
  h.rng_seed = uint_at(j, path, "rng_seed");
  const Json& dims = array_at(j, path, "sample_dimensions");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    h.sample_dimensions.push_back(static_cast<int>(int_of(dims[i], index(join(path, "sample_dimensions"), i))));
  }
  h.notes = strings_at(j, path, "notes");
  return h;
}

GenericityReport genericity_of(const Json& j, const std::string& path) {
  GenericityReport g;
  g.precision_bits = precision_at(j, path);
  const Precision p = g.precision_bits;
  g.verdict = enum_of<Verdict>(j, path, "verdict",
                               {{"presumed_generic", Verdict::PresumedGeneric},
                                {"relations_found", Verdict::RelationsFound}});
  const Json& rels = array_at(j, path, "relations");
  for (std::size_t i = 0; i < rels.size(); ++i) g.relations.push_back(relation_of(rels[i], index(join(path, "relations"), i), p));
  const Json& hyps = array_at(j, path, "hyperplanes");
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const std::string hp = index(join(path, "hyperplanes"), i);
    g.hyperplanes.push_back(Hyperplane{matrix_at(hyps[i], hp, "m"), uint_at(hyps[i], hp, "dim")});
  }
  const Json& tori = array_at(j, path, "tori");
  for (std::size_t i = 0; i < tori.size(); ++i) g.tori.push_back(torus_of(tori[i], index(join(path, "tori"), i)));
  g.height_bound = integer_of(at(j, path, "height_bound"), join(path, "height_bound"));
  g.tolerance = real_at(j, path, "tolerance", p);
  g.td_proxy = static_cast<int>(int_of(at(j, path, "td_proxy"), join(path, "td_proxy")));
  g.notes = strings_at(j, path, "notes");
  return g;
}

DensityEvidence density_of(const Json& j, const std::string& path) {
  DensityEvidence d;
  d.solutions = uint_at(j, path, "solutions");
  d.degree = static_cast<unsigned>(uint_at(j, path, "degree"));
  d.space = enum_of<DensitySpace>(j, path, "space", {{"graph", DensitySpace::Graph}, {"base", DensitySpace::Base}});
  d.monomial_count = uint_at(j, path, "monomial_count");
  d.monomial_rank = uint_at(j, path, "monomial_rank");
  d.full = bool_at(j, path, "full");
  d.inconclusive = bool_at(j, path, "inconclusive");
  d.reason = string_at(j, path, "reason");
  return d;
}

}  // namespace

std::string to_string(Verdict v) { return v == Verdict::PresumedGeneric ? "presumed_generic" : "relations_found"; }
std::string to_string(SweepOutcome o) { return o == SweepOutcome::Ok ? "ok" : "no_generic_solution"; }
std::string to_string(RelationKind k) { return relation_kind_name(k); }
std::string to_string(DensitySpace s) { return s == DensitySpace::Graph ? "graph" : "base"; }
std::string to_string(BranchPolicy p) { return p == BranchPolicy::First ? "first" : "all"; }

BranchPolicy branch_policy_from_string(std::string_view s) {
  if (s == "first") return BranchPolicy::First;
  if (s == "all") return BranchPolicy::All;
  throw Error(ErrorKind::Config, "branch policy must be 'first' or 'all', got '" + std::string(s) + "'", "config");
}

Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
    const std::size_t last_nl = text.rfind('\n', pos == 0 ? 0 : pos - 1);
    const std::size_t column = last_nl == std::string_view::npos || pos == 0 ? pos + 1 : pos - last_nl;
    throw Error(ErrorKind::Parse,
                std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) + ": invalid JSON",
                "parse");
  }
}

SystemInput system_from_json(const Json& j) {
  if (!j.is_object()) fail("", "expected a JSON object");
  SystemInput s;
  if (const Json* f = find(j, "form")) {
    const std::string form = string_of(*f, "form");
    if (form == "variety") {
      s.form = InputForm::Variety;
    } else if (form == "triangular") {
      s.form = InputForm::Triangular;
    } else {
      fail("form", "expected 'variety' or 'triangular', got '" + form + "'");
    }
  }
  const std::uint64_t n = uint_at(j, "", "n");
  if (n == 0) fail("n", "must be at least 1");

  std::vector<ConstantValue> consts;
  std::vector<ApproxConstant> blocks;
  if (const Json* a = find(j, "approx_coeffs")) {
    if (!a->is_array()) fail("approx_coeffs", "expected an array");
    for (std::size_t i = 0; i < a->size(); ++i) {
      const std::string p = index("approx_coeffs", i);
      const Json& b = (*a)[i];
      ApproxConstant c;
      c.name = find(b, "name") ? string_at(b, p, "name") : "c" + std::to_string(i + 1);
      c.value_re = string_at(b, p, "value_re");
      c.value_im = find(b, "value_im") ? string_at(b, p, "value_im") : "0";
      c.radius = string_at(b, p, "radius");
      GaussianRational value;
      try {
        value = GaussianRational(parse_poly(c.value_re, {}).constant_term().re(),
                                 parse_poly(c.value_im, {}).constant_term().re());
        parse_poly(c.radius, {});
      } catch (const Error& e) {
        fail(p, e.what());
      }
      consts.push_back(ConstantValue{c.name, value});
      blocks.push_back(std::move(c));
    }
  }

  const std::vector<std::string> names =
      s.form == InputForm::Variety ? variety_variable_names(n) : triangular_variable_names(n);
  for (const auto& c : consts) {
    if (std::find(names.begin(), names.end(), c.name) != names.end()) {
      fail("approx_coeffs", "constant name '" + c.name + "' clashes with a variable");
    }
  }
  const Json& gens = array_at(j, "", "generators");
  std::vector<MultiPoly> polys;
  for (std::size_t i = 0; i < gens.size(); ++i) polys.push_back(poly_of(gens[i], index("generators", i), names, consts));

  try {
    if (s.form == InputForm::Variety) {
      s.variety.n = n;
      s.variety.generators = std::move(polys);
      s.variety.approx_constants = std::move(blocks);
      if (const Json* f = find(j, "coefficient_field")) s.variety.coefficient_field_note = string_of(*f, "coefficient_field");
      s.variety.validate();
    } else {
      s.triangular.n = n;
      s.triangular.polys = std::move(polys);
      s.triangular.validate();
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail("generators", e.what());
  }
  return s;
}

Json to_json(const SystemInput& s) {
  Json j;
  j["form"] = s.form == InputForm::Variety ? "variety" : "triangular";
  if (s.form == InputForm::Variety) {
    j["n"] = s.variety.n;
    j["coefficient_field"] = s.variety.coefficient_field_note;
    j["generators"] = polys_json(s.variety.generators);
    Json blocks = Json::array();
    for (const auto& c : s.variety.approx_constants) {
      blocks.push_back(Json{{"name", c.name}, {"value_re", c.value_re}, {"value_im", c.value_im}, {"radius", c.radius}});
    }
    j["approx_coeffs"] = blocks;
  } else {
    j["n"] = s.triangular.n;
    j["generators"] = polys_json(s.triangular.polys);
  }
  return j;
}

Json to_json(const SolutionPoint& s) {
  const Precision p = s.precision_bits;
  Json j;
  j["record"] = "solution";
  j["precision_bits"] = p;
  j["seed"] = seed_json(s.seed);
  j["z"] = complex_vector_json(s.z, p);
  j["y"] = complex_vector_json(s.y, p);
  j["residual_exp"] = real_json(s.residual_exp, p);
  j["residual_var"] = real_json(s.residual_var, p);
  j["tolerance"] = real_json(s.tolerance, p);
  j["iterations"] = s.iterations;
  j["stage_log"] = s.stage_log;
  return j;
}

SolutionPoint solution_from_json(const Json& j) { return solution_of(j, ""); }

Json to_json(const HypothesisReport& h) {
  Json j;
  j["record"] = "hypotheses";
  j["precision_bits"] = h.precision_bits;
  j["dim_estimate"] = h.dim_estimate;
  j["pi1_dominant"] = h.pi1_dominant;
  j["pi2_dominant"] = h.pi2_dominant;
  j["samples_used"] = h.samples_used;
  j["tolerance"] = real_json(h.tolerance, h.precision_bits);
  j["rng_seed"] = h.rng_seed;
  j["sample_dimensions"] = h.sample_dimensions;
  j["notes"] = h.notes;
  return j;
}

HypothesisReport hypotheses_from_json(const Json& j) { return hypotheses_of(j, ""); }

Json to_json(const Torus& t) {
  return Json{{"m", matrix_json(t.m)},
              {"dim", t.dim},
              {"identity_component", matrix_json(t.identity_component)},
              {"invariant_factors", integers_json(t.invariant_factors)}};
}

Torus torus_from_json(const Json& j) { return torus_of(j, ""); }

Json to_json(const GenericityReport& g) {
  const Precision p = g.precision_bits;
  Json j;
  j["record"] = "audit";
  j["precision_bits"] = p;
  j["verdict"] = to_string(g.verdict);
  Json rels = Json::array();
  for (const auto& r : g.relations) rels.push_back(relation_json(r, p));
  j["relations"] = rels;
  Json hyps = Json::array();
  for (const auto& h : g.hyperplanes) hyps.push_back(Json{{"m", matrix_json(h.m)}, {"dim", h.dim}});
  j["hyperplanes"] = hyps;
  Json tori = Json::array();
  for (const auto& t : g.tori) tori.push_back(to_json(t));
  j["tori"] = tori;
  j["height_bound"] = g.height_bound.get_str();
  j["tolerance"] = real_json(g.tolerance, p);
  j["td_proxy"] = g.td_proxy;
  j["notes"] = g.notes;
  return j;
}

GenericityReport genericity_from_json(const Json& j) { return genericity_of(j, ""); }

Json to_json(const DensityEvidence& d) {
  Json j;
  j["record"] = "density";
  j["solutions"] = d.solutions;
  j["degree"] = d.degree;
  j["space"] = to_string(d.space);
  j["monomial_count"] = d.monomial_count;
  j["monomial_rank"] = d.monomial_rank;
  j["full"] = d.full;
  j["inconclusive"] = d.inconclusive;
  j["reason"] = d.reason;
  return j;
}

DensityEvidence density_from_json(const Json& j) { return density_of(j, ""); }

Json to_json(const SweepResult& r) {
  Json j;
  j["record"] = "sweep";
  j["outcome"] = to_string(r.outcome);
  j["seeds_tried"] = r.seeds_tried;
  j["hypotheses_overridden"] = r.hypotheses_overridden;
  j["hypotheses"] = r.hypotheses ? to_json(*r.hypotheses) : Json();
  Json sols = Json::array();
  for (const auto& s : r.solutions) sols.push_back(Json{{"solution", to_json(s.solution)}, {"audit", to_json(s.audit)}});
  j["solutions"] = sols;
  Json rej = Json::array();
  for (const auto& x : r.rejected) {
    Json e;
    e["seed"] = seed_json(x.seed);
    e["stage"] = x.stage;
    e["reason"] = x.reason;
    e["torus_index"] = x.torus_index ? Json(*x.torus_index) : Json();
    e["solution"] = x.solution ? to_json(*x.solution) : Json();
    e["audit"] = x.audit ? to_json(*x.audit) : Json();
    rej.push_back(e);
  }
  j["rejected"] = rej;
  Json tori = Json::array();
  for (const auto& t : r.tori) tori.push_back(to_json(t));
  j["tori"] = tori;
  j["density"] = r.density ? to_json(*r.density) : Json();
  return j;
}

SweepResult sweep_result_from_json(const Json& j) {
  SweepResult r;
  r.outcome = enum_of<SweepOutcome>(j, "", "outcome",
                                    {{"ok", SweepOutcome::Ok}, {"no_generic_solution", SweepOutcome::NoGenericSolution}});
  r.seeds_tried = uint_at(j, "", "seeds_tried");
  r.hypotheses_overridden = bool_at(j, "", "hypotheses_overridden");
  if (const Json* h = find(j, "hypotheses")) r.hypotheses = hypotheses_of(*h, "hypotheses");
  const Json& sols = array_at(j, "", "solutions");
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const std::string p = index("solutions", i);
    r.solutions.push_back(AcceptedSolution{solution_of(at(sols[i], p, "solution"), join(p, "solution")),
                                           genericity_of(at(sols[i], p, "audit"), join(p, "audit"))});
  }
  const Json& rej = array_at(j, "", "rejected");
  for (std::size_t i = 0; i < rej.size(); ++i) {
    const std::string p = index("rejected", i);
    RejectedSeed x;
    x.seed = seed_at(rej[i], p, "seed");
    x.stage = string_at(rej[i], p, "stage");
    x.reason = string_at(rej[i], p, "reason");
    if (const Json* t = find(rej[i], "torus_index")) x.torus_index = uint_of(*t, join(p, "torus_index"));
    if (const Json* s = find(rej[i], "solution")) x.solution = solution_of(*s, join(p, "solution"));
    if (const Json* a = find(rej[i], "audit")) x.audit = genericity_of(*a, join(p, "audit"));
    r.rejected.push_back(std::move(x));
  }
  const Json& tori = array_at(j, "", "tori");
  for (std::size_t i = 0; i < tori.size(); ++i) r.tori.push_back(torus_of(tori[i], index("tori", i)));
  if (const Json* d = find(j, "density")) r.density = density_of(*d, "density");
  return r;
}

}  // namespace expclose
