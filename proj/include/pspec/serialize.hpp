#pragma once

// JSON and text encodings for tuples, polynomial matrices, forms, dense
// cochains and cochain specs. Multi-indices and variables are 1-based in
// every external format.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pspec/cochain.hpp"
#include "pspec/forms.hpp"
#include "pspec/torus.hpp"

namespace pspec {

using Json = nlohmann::ordered_json;

/// A malformed input; `location` is "<source>:<json-pointer>" or
/// "<source>:byte <n>".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string location, const std::string& message)
      : std::runtime_error(location + ": " + message), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// Throws ParseError naming `source` on syntax errors.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::filesystem::path& path);

/// {"n": int, "k": int, "matrices": [[[scalar, ..], ..], ..]}
Json tuple_to_json(const MatrixTuple& t);
MatrixTuple tuple_from_json(const Json& j, const std::string& source = "input");

/// {"n": int, "entries": [[poly, ..], ..]}; "n" is optional on input and
/// defaults to the largest variable index present (at least 1).
Json poly_matrix_to_json(const PolyMatrix& m);
PolyMatrix poly_matrix_from_json(const Json& j, const std::string& source = "input");

/// {"degree": r, "terms": [{"index": [i1 < i2 < ..], "num": poly, "den": poly}]},
/// terms sorted lexicographically by index; coefficients are reduced and a
/// constant denominator is folded into the numerator.
Json form_to_json(const ScalarForm& f);
/// `nvars` defaults to the largest index or variable present.
ScalarForm form_from_json(const Json& j, std::optional<int> nvars = std::nullopt,
                          const std::string& source = "input");

/// {"degree": r, "size": k, "den": poly, "terms": [{"index": [..], "num": [[poly, ..], ..]}]}
Json matrix_form_to_json(const MatrixForm& f);

/// {"arity": a, "k": k, "coeffs": [scalar, ..]} in the flat dense layout.
Json cochain_to_json(const Cochain& phi);
Cochain cochain_from_json(const Json& j, const std::string& source = "input");

/// `trace`, `traceword:a`, `dense:<file>`, `product(spec,spec)` and
/// `cyclic-random:a:k:seed`. `k` sizes the trace words; relative dense
/// paths resolve against `base`.
Cochain parse_cochain_spec(const std::string& spec, std::size_t k, const std::filesystem::path& base = {});

/// {"mode": "exact", "q": int, "p": int} or {"mode": "numeric", "theta": double}.
TorusConfig torus_config_from_json(const Json& j, const std::string& source = "input");
Json torus_config_to_json(const TorusConfig& c);

/// Deterministic rendering: 2-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace pspec
