#include "pspec/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace pspec {

namespace {

std::string at(const std::string& source, const std::string& pointer) { return source + ":" + pointer; }

const Json& member(const Json& j, const char* key, const std::string& source, const std::string& pointer) {
  if (!j.is_object()) throw ParseError(at(source, pointer.empty() ? "/" : pointer), "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(at(source, pointer + "/" + key), "missing required field");
  return *it;
}

long integer_field(const Json& j, const char* key, const std::string& source, const std::string& pointer) {
  const Json& v = member(j, key, source, pointer);
  if (!v.is_number_integer()) throw ParseError(at(source, pointer + "/" + key), "expected an integer");
  return v.get<long>();
}

const Json& array_at(const Json& j, const std::string& source, const std::string& pointer) {
  if (!j.is_array()) throw ParseError(at(source, pointer), "expected an array");
  return j;
}

std::string string_at(const Json& j, const std::string& source, const std::string& pointer) {
  if (!j.is_string()) throw ParseError(at(source, pointer), "expected a string");
  return j.get<std::string>();
}

template <class F>
auto guarded(const std::string& source, const std::string& pointer, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(at(source, pointer), e.what());
  }
}

int max_variable(const std::string& text) {
  int best = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'z') continue;
    std::size_t j = i + 1;
    int v = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) v = v * 10 + (text[j++] - '0');
    best = std::max(best, v);
  }
  return best;
}

int max_variable(const Json& j) {
  if (j.is_string()) return max_variable(j.get<std::string>());
  int best = 0;
  if (j.is_array() || j.is_object())
    for (const auto& x : j) best = std::max(best, max_variable(x));
  return best;
}

Json index_json(const MultiIndex& index) {
  Json out = Json::array();
  for (int i : index.indices()) out.push_back(i + 1);
  return out;
}

MultiIndex index_from_json(const Json& j, int nvars, const std::string& source, const std::string& pointer) {
  array_at(j, source, pointer);
  std::vector<int> idx;
  for (std::size_t s = 0; s < j.size(); ++s) {
    const std::string p = pointer + "/" + std::to_string(s);
    if (!j[s].is_number_integer()) throw ParseError(at(source, p), "expected an integer index");
    const int v = j[s].get<int>();
    if (v < 1 || v > nvars) throw ParseError(at(source, p), "index out of range 1.." + std::to_string(nvars));
    if (!idx.empty() && v - 1 <= idx.back()) throw ParseError(at(source, p), "indices must be strictly increasing");
    idx.push_back(v - 1);
  }
  return MultiIndex(idx);
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ":byte " + std::to_string(e.byte), "malformed JSON");
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path.string());
}

Json tuple_to_json(const MatrixTuple& t) {
  Json matrices = Json::array();
  for (const auto& m : t.matrices()) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
      rows.push_back(std::move(row));
    }
    matrices.push_back(std::move(rows));
  }
  Json out;
  out["n"] = t.count();
  out["k"] = t.size();
  out["matrices"] = std::move(matrices);
  return out;
}

MatrixTuple tuple_from_json(const Json& j, const std::string& source) {
  const long n = integer_field(j, "n", source, "");
  const long k = integer_field(j, "k", source, "");
  if (n < 1) throw ParseError(at(source, "/n"), "n must be >= 1");
  if (k < 1) throw ParseError(at(source, "/k"), "k must be >= 1");
  const Json& ms = array_at(member(j, "matrices", source, ""), source, "/matrices");
  if (static_cast<long>(ms.size()) != n)
    throw ParseError(at(source, "/matrices"), "expected " + std::to_string(n) + " matrices");
  std::vector<ScalarMatrix> out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string pi = "/matrices/" + std::to_string(i);
    const Json& rows = array_at(ms[i], source, pi);
    if (static_cast<long>(rows.size()) != k) throw ParseError(at(source, pi), "expected " + std::to_string(k) + " rows");
    ScalarMatrix m(k, k, Gaussian());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string pr = pi + "/" + std::to_string(r);
      const Json& row = array_at(rows[r], source, pr);
      if (static_cast<long>(row.size()) != k)
        throw ParseError(at(source, pr), "expected " + std::to_string(k) + " entries");
      for (std::size_t c = 0; c < row.size(); ++c) {
        const std::string pc = pr + "/" + std::to_string(c);
        const std::string text = string_at(row[c], source, pc);
        m(r, c) = guarded(source, pc, [&] { return parse_gaussian(text); });
      }
    }
    out.push_back(std::move(m));
  }
  return MatrixTuple(static_cast<std::size_t>(k), std::move(out));
}

Json poly_matrix_to_json(const PolyMatrix& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    entries.push_back(std::move(row));
  }
  Json out;
  out["n"] = poly_matrix_nvars(m);
  out["entries"] = std::move(entries);
  return out;
}

PolyMatrix poly_matrix_from_json(const Json& j, const std::string& source) {
  const Json& entries = array_at(member(j, "entries", source, ""), source, "/entries");
  const int nvars = j.contains("n") ? static_cast<int>(integer_field(j, "n", source, "")) : std::max(1, max_variable(entries));
  if (nvars < 1) throw ParseError(at(source, "/n"), "n must be >= 1");
  if (entries.empty()) throw ParseError(at(source, "/entries"), "empty matrix");
  const std::size_t rows = entries.size();
  std::vector<MultiPoly> data;
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string pr = "/entries/" + std::to_string(r);
    const Json& row = array_at(entries[r], source, pr);
    if (r == 0) cols = row.size();
    if (row.size() != cols || cols == 0) throw ParseError(at(source, pr), "ragged or empty row");
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string pc = pr + "/" + std::to_string(c);
      const std::string text = string_at(row[c], source, pc);
      data.push_back(guarded(source, pc, [&] { return parse_polynomial(text, nvars); }));
    }
  }
  return PolyMatrix::from_data(rows, cols, std::move(data));
}

Json form_to_json(const ScalarForm& f) {
  Json terms = Json::array();
  for (const auto& [index, c] : f.terms()) {
    const RatFn r = c.reduced();
    MultiPoly num = r.num(), den = r.den();
    if (den.is_constant()) {
      num = num * den.constant_term().inverse();
      den = MultiPoly::constant(f.nvars(), 1);
    }
    Json t;
    t["index"] = index_json(index);
    t["num"] = to_string(num);
    t["den"] = to_string(den);
    terms.push_back(std::move(t));
  }
  Json out;
  out["degree"] = f.degree();
  out["terms"] = std::move(terms);
  return out;
}

ScalarForm form_from_json(const Json& j, std::optional<int> nvars, const std::string& source) {
  const long degree = integer_field(j, "degree", source, "");
  if (degree < 0) throw ParseError(at(source, "/degree"), "degree must be >= 0");
  const Json& terms = array_at(member(j, "terms", source, ""), source, "/terms");
  int n = nvars.value_or(0);
  if (!nvars) {
    n = max_variable(terms);
    for (const auto& t : terms)
      if (t.is_object() && t.contains("index") && t["index"].is_array())
        for (const auto& i : t["index"])
          if (i.is_number_integer()) n = std::max(n, i.get<int>());
    n = std::max(n, 1);
  }
  ScalarForm out(n, static_cast<int>(degree));
  for (std::size_t s = 0; s < terms.size(); ++s) {
    const std::string p = "/terms/" + std::to_string(s);
    const MultiIndex index = index_from_json(member(terms[s], "index", source, p), n, source, p + "/index");
    if (static_cast<long>(index.size()) != degree) throw ParseError(at(source, p + "/index"), "index length differs from degree");
    const std::string num = string_at(member(terms[s], "num", source, p), source, p + "/num");
    const std::string den = string_at(member(terms[s], "den", source, p), source, p + "/den");
    MultiPoly pn = guarded(source, p + "/num", [&] { return parse_polynomial(num, n); });
    MultiPoly pd = guarded(source, p + "/den", [&] { return parse_polynomial(den, n); });
    if (pd.is_zero()) throw ParseError(at(source, p + "/den"), "zero denominator");
    out.add_term(index, RatFn(std::move(pn), std::move(pd)));
  }
  return out;
}

Json matrix_form_to_json(const MatrixForm& f) {
  Json terms = Json::array();
  for (const auto& [index, m] : f.terms()) {
    Json t;
    t["index"] = index_json(index);
    t["num"] = poly_matrix_to_json(m)["entries"];
    terms.push_back(std::move(t));
  }
  Json out;
  out["degree"] = f.degree();
  out["size"] = f.size();
  out["den"] = to_string(f.denominator());
  out["terms"] = std::move(terms);
  return out;
}

Json cochain_to_json(const Cochain& phi) {
  const Cochain dense = densify(phi);
  Json coeffs = Json::array();
  for (const auto& c : dense.coefficients()) coeffs.push_back(to_string(c));
  Json out;
  out["arity"] = dense.arity();
  out["k"] = dense.size();
  out["coeffs"] = std::move(coeffs);
  return out;
}

Cochain cochain_from_json(const Json& j, const std::string& source) {
  const long arity = integer_field(j, "arity", source, "");
  const long k = integer_field(j, "k", source, "");
  if (arity < 1) throw ParseError(at(source, "/arity"), "arity must be >= 1");
  if (k < 1) throw ParseError(at(source, "/k"), "k must be >= 1");
  const Json& coeffs = array_at(member(j, "coeffs", source, ""), source, "/coeffs");
  std::size_t expected = 1;
  for (long s = 0; s < arity; ++s) expected *= static_cast<std::size_t>(k * k);
  if (coeffs.size() != expected)
    throw ParseError(at(source, "/coeffs"), "expected " + std::to_string(expected) + " coefficients");
  std::vector<Gaussian> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string p = "/coeffs/" + std::to_string(i);
    const std::string text = string_at(coeffs[i], source, p);
    out.push_back(guarded(source, p, [&] { return parse_gaussian(text); }));
  }
  return Cochain::dense(static_cast<int>(arity), static_cast<std::size_t>(k), std::move(out));
}

namespace {

long spec_integer(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw ParseError("cochain spec '" + spec + "'", "expected an integer, got '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Cochain parse_cochain_spec(const std::string& spec, std::size_t k, const std::filesystem::path& base) {
  const std::string where = "cochain spec '" + spec + "'";
  if (spec == "trace") return Cochain::trace_word(1, k);
  if (spec.rfind("traceword:", 0) == 0) {
    const long a = spec_integer(spec.substr(10), spec);
    if (a < 1) throw ParseError(where, "arity must be >= 1");
    return Cochain::trace_word(static_cast<int>(a), k);
  }
  if (spec.rfind("dense:", 0) == 0) {
    std::filesystem::path p = spec.substr(6);
    if (p.is_relative() && !base.empty()) p = base / p;
    return cochain_from_json(read_json_file(p), p.string());
  }
  if (spec.rfind("cyclic-random:", 0) == 0) {
    const auto parts = split(spec.substr(14), ':');
    if (parts.size() != 3) throw ParseError(where, "expected cyclic-random:a:k:seed");
    const long a = spec_integer(parts[0], spec), kk = spec_integer(parts[1], spec);
    if (a < 1 || kk < 1) throw ParseError(where, "arity and k must be >= 1");
    SplitMix64 rng(static_cast<std::uint64_t>(spec_integer(parts[2], spec)));
    return cyclic_symmetrize(random_dense_cochain(rng, static_cast<int>(a), static_cast<std::size_t>(kk)));
  }
  if (spec.rfind("product(", 0) == 0 && spec.back() == ')') {
    const std::string inner = spec.substr(8, spec.size() - 9);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0)
        return Cochain::product(parse_cochain_spec(inner.substr(0, i), k, base),
                                parse_cochain_spec(inner.substr(i + 1), k, base));
    }
    throw ParseError(where, "product needs two comma-separated specs");
  }
  throw ParseError(where, "unknown cochain kind");
}

TorusConfig torus_config_from_json(const Json& j, const std::string& source) {
  const std::string mode = string_at(member(j, "mode", source, ""), source, "/mode");
  if (mode == "exact") {
    const long q = integer_field(j, "q", source, "");
    const long p = integer_field(j, "p", source, "");
    if (q < 1) throw ParseError(at(source, "/q"), "q must be >= 1");
    return TorusConfig::exact(static_cast<int>(q), static_cast<int>(p));
  }
  if (mode == "numeric") {
    const Json& theta = member(j, "theta", source, "");
    if (!theta.is_number()) throw ParseError(at(source, "/theta"), "expected a number");
    return guarded(source, "/theta", [&] { return TorusConfig::numeric(theta.get<double>()); });
  }
  throw ParseError(at(source, "/mode"), "mode must be \"exact\" or \"numeric\"");
}

Json torus_config_to_json(const TorusConfig& c) {
  Json out;
  if (c.mode == TorusConfig::Mode::exact) {
    out["mode"] = "exact";
    out["q"] = c.q;
    out["p"] = c.p_prime;
  } else {
    out["mode"] = "numeric";
    out["theta"] = c.theta;
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace pspec
