#include "cli.hpp"
#include "expclose/poly_text.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace expclose;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = 0;
  std::string out;
  std::string err;
  [[nodiscard]] Json json() const { return parse_json_text(out, "stdout"); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.status = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("expclose_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string& swap_file() {
  static const std::string p = write("swap.json", R"({"form": "variety", "n": 2, "generators": [
      [{"coeff": "1", "exps": [0, 0, 1, 0]}, {"coeff": "-1", "exps": [0, 1, 0, 0]}],
      [{"coeff": "1", "exps": [0, 0, 0, 1]}, {"coeff": "-1", "exps": [1, 0, 0, 0]}]]})");
  return p;
}

const std::string& graph_file() {
  static const std::string p = write("graph.json", R"({"n": 1, "generators": ["y1 - x1"]})");
  return p;
}

}  // namespace

TEST_CASE("check on the swap system passes the gate") {
  const Run r = run({"check", swap_file()});
  CHECK(r.status == 0);
  const Json j = r.json();
  CHECK(j["result"]["dim_estimate"] == 2);
  CHECK(j["result"]["pi1_dominant"] == true);
  CHECK(j["result"]["pi2_dominant"] == true);
  CHECK(j["gate"]["passed"] == true);
  CHECK(j["config"]["precision_bits"] == 256);
}

TEST_CASE("a zero seed is an input error") {
  const Run r = run({"solve", graph_file(), "--seed", "0"});
  CHECK(r.status == 4);
  CHECK(r.json()["error"]["kind"] == "invalid_seed");
  CHECK(run({"solve", swap_file(), "--seed", "1"}).status == 4);
}

TEST_CASE("constant variety fails the two-sided gate") {
  const std::string f = write("const.json", R"({"n": 1, "generators": ["y1 - 2"]})");
  const Run both = run({"check", f, "--require-both-dominant"});
  CHECK(both.status == 2);
  CHECK(both.json()["gate"]["passed"] == false);
  CHECK(both.json()["result"]["pi2_dominant"] == false);
  CHECK(run({"--require-both-dominant", "check", f}).status == 2);
  CHECK(run({"check", f}).status == 0);
  CHECK(run({"solve", f, "--require-both-dominant"}).status == 2);
}

TEST_CASE("configuration errors exit with 4") {
  CHECK(run({"check", swap_file(), "--precision-bits", "32"}).status == 4);
  CHECK(run({"check", swap_file(), "--height-bound", "0"}).status == 4);
  CHECK(run({"solve", graph_file(), "--tol", "2"}).status == 4);
  CHECK(run({"solve", graph_file(), "--tol", "0"}).status == 4);
  CHECK(run({"solve", graph_file(), "--format", "xml"}).status == 4);
  CHECK(run({"solve", graph_file(), "--no-such-flag"}).status == 4);
  CHECK(run({"check", (scratch() / "missing.json").string()}).status == 4);
  const std::string bad = write("bad.json", "{\n  \"n\": 1,\n  \"generators\": [\"y1 - \"]\n}");
  const Run r = run({"check", bad});
  CHECK(r.status == 4);
  CHECK(r.err.find("generators[0]") != std::string::npos);
  const std::string broken = write("broken.json", "{\n  \"n\": 1\n  \"generators\": []\n}");
  CHECK(run({"check", broken}).err.find(":3:") != std::string::npos);
}

TEST_CASE("solve reports decimal strings and audit reads the report") {
  const Run s = run({"solve", graph_file(), "--seed", "1"});
  REQUIRE(s.status == 0);
  const Json j = s.json();
  CHECK(j["result"]["z"][0]["re"].get<std::string>().substr(0, 12) == "2.0622777295");
  CHECK(j["result"]["precision_bits"] == 256);
  const SolutionPoint back = solution_from_json(j["result"]);
  CHECK(to_json(back) == j["result"]);

  const std::string path = write("solution.json", s.out);
  const Run a = run({"audit", path, "--height-bound", "100"});
  CHECK(a.status == 0);
  CHECK(a.json()["result"]["verdict"] == "presumed_generic");
  CHECK(genericity_from_json(a.json()["result"]) == genericity_from_json(a.json()["result"]));
  CHECK(to_json(genericity_from_json(a.json()["result"])) == a.json()["result"]);
}

TEST_CASE("triangular input and triangularize") {
  const std::string t = write("tri.json", R"({"form": "triangular", "n": 1, "generators": ["u^2 - x1"]})");
  const Run s = run({"solve", t, "--seed", "1", "--branch", "0"});
  CHECK(s.status == 0);
  const Run tr = run({"triangularize", swap_file()});
  REQUIRE(tr.status == 0);
  const Json res = tr.json()["result"];
  CHECK(res["fiber_bound"] == 1);
  const SystemInput sys = system_from_json(res["system"]);
  CHECK(sys.form == InputForm::Triangular);
  CHECK(sys.triangular.polys[0] == parse_poly("u - x2", triangular_variable_names(2)));
  CHECK(run({"triangularize", t}).status == 4);
}

TEST_CASE("echoed config reproduces byte-identical reports") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"solve", swap_file(), "--seed", "2,-1", "--precision-bits", "192"},
        std::vector<std::string>{"check", swap_file(), "--rng-seed", "9", "--samples", "3"},
        std::vector<std::string>{"sweep", swap_file(), "--seed-box", "-1..1,1..2", "--density-degree", "1"}}) {
    const Run first = run(args);
    REQUIRE(first.status == 0);
    CHECK(run(args).out == first.out);
    const std::string echo = write("echo.json", first.out);
    const Run again = run({args[0], args[1], "--config", echo});
    CHECK(again.out == first.out);
  }
}

TEST_CASE("environment precision is overridden by the flag") {
  ::setenv("EXPCLOSE_PRECISION_BITS", "128", 1);
  const Run env = run({"solve", graph_file()});
  const Run flag = run({"solve", graph_file(), "--precision-bits", "160"});
  ::unsetenv("EXPCLOSE_PRECISION_BITS");
  CHECK(env.json()["config"]["precision_bits"] == 128);
  CHECK(env.json()["result"]["precision_bits"] == 128);
  CHECK(flag.json()["config"]["precision_bits"] == 160);
}

TEST_CASE("sweep writes the report file and text output") {
  const std::string out = (scratch() / "results.json").string();
  const Run r = run({"sweep", swap_file(), "--seed-box", "-2..2", "--budget", "200", "--height-bound", "100",
                     "--density-degree", "2", "--out", out, "--threads", "2"});
  CHECK(r.status == 0);
  CHECK(read(out) == r.out);
  const SweepResult back = sweep_result_from_json(r.json()["result"]);
  CHECK(back.tori.size() == 1);
  CHECK(back.rejected.size() == 4);
  CHECK(back.solutions.size() == 12);
  CHECK(to_json(back) == r.json()["result"]);

  const Run text = run({"sweep", graph_file(), "--seed-box", "1..2", "--format", "text"});
  CHECK(text.status == 0);
  CHECK(text.out.find("result.outcome = ok") != std::string::npos);
  CHECK(text.out.find("result.solutions[1].solution.z[0] = ") != std::string::npos);
}

TEST_CASE("empty seed box and bad ranges") {
  CHECK(run({"sweep", graph_file(), "--seed-box", "0..0"}).status == 4);
  CHECK(run({"sweep", graph_file(), "--seed-box", "1-3"}).status == 4);
  CHECK(run({"sweep", graph_file(), "--branch-policy", "most"}).status == 4);
  CHECK(cli::parse_seed_box("-3..3", 2) == std::vector<SeedRange>{{-3, 3}, {-3, 3}});
  CHECK(cli::parse_seed_box("-1..1,2..4", 2) == std::vector<SeedRange>{{-1, 1}, {2, 4}});
}

TEST_CASE("config json round-trips") {
  cli::RunConfig c;
  c.precision_bits = 300;
  c.tol = "1e-50";
  c.height_bound = 1000;
  c.seed = {1, -2};
  c.density_degree = 2;
  CHECK(cli::config_from_json(cli::to_json(c)) == c);
  CHECK_NOTHROW(c.validate());
}
