#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pspec/serialize.hpp"
#include "pspec/suites.hpp"

using namespace pspec;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

/// Runs the CLI with stderr folded into stdout.
Run run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + PSPEC_CLI_PATH + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "pspec_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path units_file() { return write_file("units.json", dump(tuple_to_json(matrix_unit_tuple()))); }

}  // namespace

TEST_CASE("spectrum on the matrix-unit tuple") {
  Run r = run("spectrum --input " + units_file().string());
  CHECK(r.code == 0);
  CHECK(r.out == "det: z1*z4-z2*z3\ndegree: 2\n");
}

TEST_CASE("form --kind kappa writes parseable form JSON") {
  const fs::path out = scratch() / "kappa.json";
  Run r = run("form --kind kappa --cochain trace --input " + units_file().string() + " --json-out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(read_file(out) == r.out);
  ScalarForm f = form_from_json(parse_json_text(r.out, "stdout"), 4);
  CHECK(f.degree() == 1);
  CHECK(dump(form_to_json(f)) == r.out);
}

TEST_CASE("form --kind top-factor and mc") {
  Run r = run("form --kind top-factor --input " + units_file().string());
  CHECK(r.code == 0);
  Json j = parse_json_text(r.out, "stdout");
  CHECK(j["relations_hold"] == true);
  CHECK(j["residual"]["terms"].empty());
  Run mc = run("form --kind mc --input " + units_file().string());
  CHECK(mc.code == 0);
  CHECK(parse_json_text(mc.out, "stdout")["den"] == "z1*z4-z2*z3");
}

TEST_CASE("verify --suite parity --seed 7 passes and matches PSPEC_SEED=7") {
  Run r = run("verify --suite parity --seed 7");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS  parity: tr(omega^2) = 0") != std::string::npos);
  Run env = run("verify --suite parity", "PSPEC_SEED=7");
  CHECK(env.out == r.out);
}

TEST_CASE("verify --suite example35 --trials 100 --seed 1 reports epsilon") {
  const fs::path out = scratch() / "example35.json";
  Run r = run("verify --suite example35 --trials 100 --seed 1 --json-out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("epsilon = -1") != std::string::npos);
  CHECK(r.out.find("100/100 trials") != std::string::npos);
  Json j = parse_json_text(read_file(out), out.string());
  CHECK(j["passed"] == true);
}

TEST_CASE("a failing check exits 1 with the counterexample") {
  const fs::path singular =
      write_file("singular.json", R"({"n": 2, "k": 2, "matrices": [[["1","1"],["1","1"]], [["2","2"],["2","2"]]]})");
  Run r = run("verify --suite flatness --input " + singular.string());
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL  flatness") != std::string::npos);
  CHECK(r.out.find("counterexample: ") != std::string::npos);
  CHECK(r.out.find("empty resolvent set") != std::string::npos);
  CHECK(r.out.find(R"("matrices":[[["1","1"],["1","1"]])") != std::string::npos);
}

TEST_CASE("malformed input exits 2 with a location") {
  Run syntax = run("spectrum --input " + write_file("broken.json", "{\"n\": 4,").string());
  CHECK(syntax.code == 2);
  CHECK(syntax.out.find("broken.json:byte") != std::string::npos);

  Run schema = run("spectrum --input " +
                   write_file("short.json", R"({"n": 2, "k": 2, "matrices": [[["1","0"],["0","1"]]]})").string());
  CHECK(schema.code == 2);
  CHECK(schema.out.find("short.json:/matrices") != std::string::npos);

  Run scalar = run("spectrum --input " +
                   write_file("scalar.json", R"({"n": 1, "k": 1, "matrices": [[["2/x"]]]})").string());
  CHECK(scalar.code == 2);
  CHECK(scalar.out.find("/matrices/0/0/0") != std::string::npos);

  CHECK(run("verify --suite parity --seed banana").code == 2);
  CHECK(run("verify --suite parity", "PSPEC_SEED=-3").code == 2);
  CHECK(run("verify --suite nonsense").code == 2);
  CHECK(run("form --kind kappa --cochain traceword:z --input " + units_file().string()).code == 2);
  CHECK(run("spectrum --input /nonexistent/tuple.json").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("torus --check factorization") {
  Run r = run("torus --check factorization --seed 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("11 samples") != std::string::npos);
  const fs::path cfg = write_file("torus.json", R"({"mode": "exact", "q": 4, "p": 1})");
  Run exact = run("torus --check cocycles --input " + cfg.string());
  CHECK(exact.code == 0);
  CHECK(exact.out.find("summary: 4 checks, 0 failed") != std::string::npos);
  const fs::path numeric = write_file("torus_numeric.json", R"({"mode": "numeric", "theta": 0.3})");
  CHECK(run("torus --check cocycles --input " + numeric.string()).code == 2);
}
