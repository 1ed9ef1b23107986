// pspec: projective spectra, Maurer-Cartan forms and the cochain-to-form map
// from the command line. Exit status: 0 all checks pass, 1 a check failed,
// 2 malformed input or arguments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pspec/chenweil.hpp"
#include "pspec/jacobi.hpp"
#include "pspec/serialize.hpp"
#include "pspec/suites.hpp"

using namespace pspec;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kParse = 2;

struct Job {
  std::string input;
  std::string seed_text;
  int trials = 0;
  std::string json_out;
  double tol = 1e-10;
  std::string suite;
  std::string kind;
  std::string cochain;
  int power = 3;
  std::string check;
};

std::uint64_t parse_seed(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size() || text[0] == '-') throw ParseError(where, "invalid seed '" + text + "'");
  return v;
}

std::uint64_t resolve_seed(const Job& job) {
  if (!job.seed_text.empty()) return parse_seed(job.seed_text, "--seed");
  if (const char* env = std::getenv("PSPEC_SEED"); env && *env) return parse_seed(env, "PSPEC_SEED");
  return 1;
}

Json require_input(const Job& job) {
  if (job.input.empty()) throw ParseError("--input", "an input file is required");
  return read_json_file(job.input);
}

/// A tuple file gives its pencil; an {"entries": ..} file gives the matrix itself.
PolyMatrix input_matrix(const Json& j, const std::string& source, std::optional<MatrixTuple>* tuple = nullptr) {
  if (j.is_object() && j.contains("entries")) return poly_matrix_from_json(j, source);
  MatrixTuple t = tuple_from_json(j, source);
  if (tuple) *tuple = t;
  return pencil(t);
}

void write_json(const Job& job, const Json& j) {
  if (job.json_out.empty()) return;
  std::ofstream out(job.json_out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + job.json_out);
  out << dump(j);
}

int emit_report(const Job& job, const SuiteReport& report) {
  std::cout << render_text(report);
  write_json(job, render_json(report));
  return report.passed() ? kPass : kFail;
}

SuiteOptions suite_options(const Job& job) {
  SuiteOptions o;
  o.seed = resolve_seed(job);
  o.trials = job.trials;
  o.tol = job.tol;
  if (!job.input.empty()) o.input = tuple_from_json(read_json_file(job.input), job.input);
  return o;
}

int run_spectrum(const Job& job) {
  const Json in = require_input(job);
  const MultiPoly det = determinant(input_matrix(in, job.input));
  const std::optional<int> degree = homogeneity_degree(det);
  Json out;
  out["det"] = to_string(det);
  if (degree) out["degree"] = *degree;
  else out["degree"] = nullptr;
  std::cout << "det: " << to_string(det) << "\n"
            << "degree: " << (degree ? std::to_string(*degree) : std::string("not homogeneous")) << "\n";
  write_json(job, out);
  return kPass;
}

int run_form(const Job& job) {
  const Json in = require_input(job);
  std::optional<MatrixTuple> tuple;
  const PolyMatrix f = input_matrix(in, job.input, &tuple);
  const std::size_t k = f.rows();
  const int n = poly_matrix_nvars(f);
  Json out;
  if (job.kind == "mc") {
    out = matrix_form_to_json(maurer_cartan(f));
  } else if (job.kind == "kappa") {
    const Cochain phi = parse_cochain_spec(job.cochain.empty() ? "trace" : job.cochain, k);
    out = form_to_json(kappa(phi, f).form);
  } else if (job.kind == "trace-power") {
    if (job.power < 1) throw ParseError("--power", "must be >= 1");
    const Cochain phi =
        parse_cochain_spec(job.cochain.empty() ? "traceword:" + std::to_string(job.power) : job.cochain, k);
    out = form_to_json(trace_power_form(f, job.power, phi));
  } else {
    const Cochain phi =
        parse_cochain_spec(job.cochain.empty() ? "traceword:" + std::to_string(n - 1) : job.cochain, k);
    TopFormFactorization t = factorize_top_form(f, phi);
    const RatFn q = t.q.reduced();
    out["q"] = Json{{"num", to_string(q.num())}, {"den", to_string(q.den())}};
    out["s"] = form_to_json(t.s);
    out["residual"] = form_to_json(t.residual);
    out["relations_hold"] = t.relations_hold;
    if (t.det_power) out["det_power"] = *t.det_power;
    std::cout << dump(out);
    write_json(job, out);
    return t.residual.is_zero() && t.relations_hold ? kPass : kFail;
  }
  std::cout << dump(out);
  write_json(job, out);
  return kPass;
}

int run_verify(const Job& job) { return emit_report(job, run_suite(job.suite, suite_options(job))); }

int run_torus(const Job& job) {
  SuiteOptions o;
  o.seed = resolve_seed(job);
  o.trials = job.trials;
  o.tol = job.tol;
  std::optional<TorusConfig> config;
  if (!job.input.empty()) config = torus_config_from_json(read_json_file(job.input), job.input);
  return emit_report(job, run_torus_check(job.check, o, config));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projective spectra and cochain-to-form checks for matrix pencils"};
  app.require_subcommand(1);
  Job job;

  auto common = [&job](CLI::App* cmd) {
    cmd->add_option("--input", job.input, "JSON input file");
    cmd->add_option("--json-out", job.json_out, "write the JSON result here");
  };
  auto randomized = [&job](CLI::App* cmd) {
    cmd->add_option("--seed", job.seed_text, "64-bit seed (default $PSPEC_SEED, else 1)");
    cmd->add_option("--trials", job.trials, "trials per randomized check")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", job.tol, "tolerance for numeric checks")->check(CLI::PositiveNumber);
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "det A(z) and its homogeneity degree");
  common(spectrum);

  CLI::App* form = app.add_subcommand("form", "Maurer-Cartan form, kappa, trace powers, top-form factorization");
  common(form);
  form->add_option("--kind", job.kind, "form to compute")
      ->required()
      ->check(CLI::IsMember({"mc", "kappa", "trace-power", "top-factor"}));
  form->add_option("--cochain", job.cochain, "trace | traceword:a | dense:<file> | product(s,t) | cyclic-random:a:k:seed");
  form->add_option("--power", job.power, "m for --kind trace-power");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  randomized(verify);
  std::vector<std::string> names = suite_names();
  names.push_back("all");
  verify->add_option("--suite", job.suite, "suite name")->required()->check(CLI::IsMember(names));

  CLI::App* torus = app.add_subcommand("torus", "noncommutative torus checks");
  common(torus);
  randomized(torus);
  torus->add_option("--check", job.check, "which check")->required()->check(CLI::IsMember({"cocycles", "factorization"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kParse;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(job);
    if (form->parsed()) return run_form(job);
    if (verify->parsed()) return run_verify(job);
    return run_torus(job);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kFail;
  }
}
