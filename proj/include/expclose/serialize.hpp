// JSON records for inputs and reports. High-precision numbers are decimal
// strings that read back to the identical value at the record's
// `precision_bits`; exact integers of unbounded size are decimal strings too.

#pragma once

#include "expclose/generic.hpp"
#include "expclose/masser.hpp"
#include "expclose/sweep.hpp"
#include "expclose/triangularize.hpp"
#include "expclose/variety.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace expclose {

using Json = nlohmann::ordered_json;

enum class InputForm { Variety, Triangular };

/// Contents of an input file: a variety (generators in x1..xn, y1..yn) or a
/// triangular system (polynomials in x1..xn, u), chosen by `form`.
struct SystemInput {
  InputForm form = InputForm::Variety;
  ExpVariety variety;
  TriangularSystem triangular;
  friend bool operator==(const SystemInput&, const SystemInput&) = default;
};

/// Parses JSON text; syntax errors throw Parse citing line and column.
Json parse_json_text(std::string_view text, std::string_view source);

/// Throws Parse naming the offending field, e.g. `generators[1][0].exps`.
SystemInput system_from_json(const Json& j);
/// Canonical form: term arrays with exact coefficients, approx blocks echoed.
Json to_json(const SystemInput& s);

Json to_json(const SolutionPoint& s);
SolutionPoint solution_from_json(const Json& j);

Json to_json(const HypothesisReport& h);
HypothesisReport hypotheses_from_json(const Json& j);

Json to_json(const Torus& t);
Torus torus_from_json(const Json& j);

Json to_json(const GenericityReport& g);
GenericityReport genericity_from_json(const Json& j);

Json to_json(const DensityEvidence& d);
DensityEvidence density_from_json(const Json& j);

Json to_json(const SweepResult& r);
SweepResult sweep_result_from_json(const Json& j);

/// `ok`, `no_generic_solution`; `presumed_generic`, `relations_found`; ...
std::string to_string(Verdict v);
std::string to_string(SweepOutcome o);
std::string to_string(RelationKind k);
std::string to_string(DensitySpace s);
std::string to_string(BranchPolicy p);
BranchPolicy branch_policy_from_string(std::string_view s);

}  // namespace expclose
