// Command-line front end: check, triangularize, solve, audit, sweep.
//
// Exit status: 0 success, 2 hypothesis gate, 3 solver or elimination
// failure (including a sweep without generic solutions), 4 parse or
// configuration error, 1 anything else.

#pragma once

#include "expclose/errors.hpp"
#include "expclose/serialize.hpp"
#include "expclose/sweep.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace expclose::cli {

enum ExitCode : int { kOk = 0, kOther = 1, kGate = 2, kSolver = 3, kInput = 4 };

struct RunConfig {
  Precision precision_bits = 256;
  std::string tol = "auto";  ///< "auto" is 2^{-precision/2}
  mpz_class height_bound = 100;
  std::uint64_t rng_seed = 0;
  std::size_t max_iter = 500;
  std::string format = "json";
  std::size_t samples = 5;
  bool require_both_dominant = false;
  std::vector<long> seed;            ///< solve; empty means all ones
  std::vector<std::size_t> branch;   ///< solve
  std::string seed_box = "-3..3";    ///< sweep
  std::size_t budget = 200;          ///< sweep
  std::optional<unsigned> density_degree;
  bool override_hypotheses = false;  ///< sweep
  std::size_t threads = 1;           ///< sweep
  std::string branch_policy = "first";

  /// Throws Config unless precision_bits >= 64, H >= 1, tol in (0, 1),
  /// format is text or json.
  void validate() const;
  [[nodiscard]] std::optional<Real> tolerance() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

Json to_json(const RunConfig& c);
/// Fields absent from `j` keep their value in `base`.
RunConfig config_from_json(const Json& j, RunConfig base = {});

/// `lo..hi` for every coordinate, or a comma-separated list of ranges.
std::vector<SeedRange> parse_seed_box(const std::string& text, std::size_t n);

int exit_code_for(ErrorKind kind);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expclose::cli
