#pragma once

// Named verification suites shared by the CLI and the acceptance binary.
// Every randomized line draws trial t from derive_seed(derive_seed(seed,
// salt), t), so reports depend only on the options.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pspec/matrix.hpp"
#include "pspec/serialize.hpp"

namespace pspec {

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Overrides each line's default trial count when positive.
  int trials = 0;
  /// Numeric tolerance for the truncated-resolvent lines.
  double tol = 1e-10;
  /// Replaces the random pencils of lines whose shape constraints it meets.
  std::optional<MatrixTuple> input;
};

struct CheckLine {
  std::string suite;
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::size_t trials = 0;
  std::string detail;
  /// First failing trial.
  std::optional<Json> counterexample;
};

struct SuiteReport {
  std::vector<CheckLine> lines;
  bool passed() const;
};

/// flatness, theorem29, jacobi-classic, parity, theorem33, example35, tau,
/// hyperplane, torus; "all" runs them in that order.
const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

/// Throws std::invalid_argument for unknown names.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

/// Torus lines only; `which` is "cocycles" or "factorization".
SuiteReport run_torus_check(const std::string& which, const SuiteOptions& options,
                            const std::optional<TorusConfig>& config = std::nullopt);

/// One "PASS|FAIL|SKIP  suite: name  (detail)" line per check, then a summary.
std::string render_text(const SuiteReport& report);
Json render_json(const SuiteReport& report);

/// printf("%.6e").
std::string format_double(double x);

/// The tuple (E11, E12, E21, E22).
MatrixTuple matrix_unit_tuple();

}  // namespace pspec
