#include <functional>

#include "doctest.h"
#include "oracles.hpp"
#include "pspec/chenweil.hpp"
#include "pspec/jacobi.hpp"
#include "pspec/random.hpp"
#include "pspec/serialize.hpp"
#include "pspec/suites.hpp"

using namespace pspec;
using oracle::P;
using oracle::R;

namespace {

std::string location_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.location();
  }
  return "no error";
}

}  // namespace

TEST_CASE("tuple JSON layout") {
  Json j = tuple_to_json(matrix_unit_tuple());
  CHECK(j["n"] == 4);
  CHECK(j["k"] == 2);
  CHECK(j["matrices"][1][0][1] == "1");
  CHECK(j["matrices"][1][1][0] == "0");
  CHECK(tuple_from_json(j) == matrix_unit_tuple());
}

TEST_CASE("property: serialize -> parse -> serialize is the identity on tuples") {
  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    SplitMix64 rng(derive_seed(100, trial));
    ScalarRange range;
    range.imaginary_eighths = 4;
    MatrixTuple t = random_tuple(rng, 1 + trial % 4, 1 + trial % 3, range);
    const std::string once = dump(tuple_to_json(t));
    MatrixTuple back = tuple_from_json(parse_json_text(once, "roundtrip"));
    CHECK(back == t);
    CHECK(dump(tuple_to_json(back)) == once);
  }
}

TEST_CASE("property: serialize -> parse -> serialize is the identity on forms") {
  for (std::uint64_t trial = 0; trial < 12; ++trial) {
    SplitMix64 rng(derive_seed(101, trial));
    PolyMatrix f = pencil(random_regular_tuple(rng, 3 + trial % 2, 2));
    const int a = 1 + static_cast<int>(trial % 3);
    ScalarForm form = kappa(random_dense_cochain(rng, a, 2), f).form;
    const std::string once = dump(form_to_json(form));
    ScalarForm back = form_from_json(parse_json_text(once, "roundtrip"), poly_matrix_nvars(f));
    CHECK(back == form);
    CHECK(dump(form_to_json(back)) == once);
  }
}

TEST_CASE("form JSON: sorted 1-based indices, constant denominators folded") {
  ScalarForm f(3, 1);
  f.add_term(MultiIndex::single(2), R("z1", "2", 3));
  f.add_term(MultiIndex::single(0), R("z2", "z1+z3", 3));
  Json j = form_to_json(f);
  REQUIRE(j["terms"].size() == 2);
  CHECK(j["terms"][0]["index"] == Json::array({1}));
  CHECK(j["terms"][1]["index"] == Json::array({3}));
  CHECK(j["terms"][1]["num"] == "1/2*z1");
  CHECK(j["terms"][1]["den"] == "1");
  CHECK(form_from_json(j) == f);
}

TEST_CASE("property: serialize -> parse -> serialize is the identity on cochains") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    SplitMix64 rng(derive_seed(102, trial));
    ScalarRange range;
    range.imaginary_eighths = 3;
    Cochain phi = random_dense_cochain(rng, 1 + static_cast<int>(trial % 3), 2 + trial % 2, range);
    const std::string once = dump(cochain_to_json(phi));
    Cochain back = cochain_from_json(parse_json_text(once, "roundtrip"));
    CHECK(back.coefficients() == phi.coefficients());
    CHECK(dump(cochain_to_json(back)) == once);
  }
  // Structured cochains serialize through their dense expansion.
  Json tr = cochain_to_json(Cochain::trace_word(2, 2));
  CHECK(tr["coeffs"].size() == 16);
  CHECK(cochain_from_json(tr).coefficients() == densify(Cochain::trace_word(2, 2)).coefficients());
}

TEST_CASE("polynomial matrices and torus configurations round trip") {
  PolyMatrix m = PolyMatrix::from_data(2, 2, {P("z1^2", 3), P("z2*z3", 3), P("0", 3), P("1/3*z1-i*z3", 3)});
  Json j = poly_matrix_to_json(m);
  CHECK(poly_matrix_from_json(j) == m);
  Json no_n = j;
  no_n.erase("n");
  CHECK(poly_matrix_from_json(no_n) == m);

  for (const TorusConfig& c : {TorusConfig::exact(5, 2), TorusConfig::numeric(0.375)}) {
    const TorusConfig back = torus_config_from_json(torus_config_to_json(c));
    CHECK(back.mode == c.mode);
    CHECK(back.q == c.q);
    CHECK(back.p_prime == c.p_prime);
    CHECK(back.theta == c.theta);
  }
}

TEST_CASE("parse errors carry a location") {
  CHECK(location_of([] { parse_json_text("{\"n\": 4,", "in.json"); }).rfind("in.json:byte", 0) == 0);
  Json t = tuple_to_json(matrix_unit_tuple());
  t["matrices"][2][1][0] = "1/0";
  CHECK(location_of([&] { tuple_from_json(t, "in.json"); }) == "in.json:/matrices/2/1/0");
  t = tuple_to_json(matrix_unit_tuple());
  t.erase("k");
  CHECK(location_of([&] { tuple_from_json(t, "in.json"); }) == "in.json:/k");
  t = tuple_to_json(matrix_unit_tuple());
  t["matrices"][0].erase(1);
  CHECK(location_of([&] { tuple_from_json(t, "in.json"); }) == "in.json:/matrices/0");

  Json f = form_to_json(s_form(4));
  f["terms"][1]["index"] = Json::array({2, 1, 3});
  CHECK(location_of([&] { form_from_json(f, 4, "f.json"); }) == "f.json:/terms/1/index/1");
  f = form_to_json(s_form(4));
  f["terms"][0]["den"] = "0";
  CHECK(location_of([&] { form_from_json(f, 4, "f.json"); }) == "f.json:/terms/0/den");

  Json c = cochain_to_json(Cochain::trace_word(1, 2));
  c["coeffs"].erase(0);
  CHECK(location_of([&] { cochain_from_json(c, "c.json"); }) == "c.json:/coeffs");
  CHECK(location_of([] { torus_config_from_json(Json{{"mode", "exact"}, {"q", 0}, {"p", 1}}, "t.json"); }) ==
        "t.json:/q");
}

TEST_CASE("cochain spec mini-language") {
  CHECK(parse_cochain_spec("trace", 2).kind() == Cochain::Kind::trace_word);
  Cochain w = parse_cochain_spec("traceword:3", 2);
  CHECK(w.arity() == 3);
  Cochain p = parse_cochain_spec("product(trace,product(traceword:3,trace))", 2);
  CHECK(p.kind() == Cochain::Kind::product);
  CHECK(p.arity() == 5);
  Cochain r1 = parse_cochain_spec("cyclic-random:2:2:9", 2);
  Cochain r2 = parse_cochain_spec("cyclic-random:2:2:9", 2);
  CHECK(is_cyclic(r1));
  CHECK(r1.coefficients() == r2.coefficients());
  CHECK_THROWS_AS(parse_cochain_spec("traceword:x", 2), ParseError);
  CHECK_THROWS_AS(parse_cochain_spec("product(trace)", 2), ParseError);
  CHECK_THROWS_AS(parse_cochain_spec("bogus", 2), ParseError);
  CHECK_THROWS_AS(parse_cochain_spec("dense:/nonexistent/file.json", 2), ParseError);
}
