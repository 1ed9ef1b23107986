#include "doctest.h"
#include "pspec/random.hpp"
#include "pspec/torus.hpp"

using namespace pspec;
using C = std::complex<double>;

namespace {

ExactTorusElement U(const TorusConfig& c, long e = 1) { return ExactTorusElement::monomial(c, e, 0); }
ExactTorusElement V(const TorusConfig& c, long e = 1) { return ExactTorusElement::monomial(c, 0, e); }

RootOfUnityElement random_coeff(SplitMix64& rng, int q) {
  std::vector<Gaussian> c(q);
  for (auto& g : c) g = rng.coin(1, 2) ? random_gaussian(rng) : Gaussian();
  return RootOfUnityElement(q, std::move(c));
}

ExactTorusElement random_exact(SplitMix64& rng, const TorusConfig& c, int terms = 3, long range = 2) {
  ExactTorusElement x(c);
  for (int i = 0; i < terms; ++i) x.add_term(rng.uniform(-range, range), rng.uniform(-range, range), random_coeff(rng, c.q));
  return x;
}

NumericTorusElement random_numeric(SplitMix64& rng, const TorusConfig& c, int terms = 3, long range = 2) {
  NumericTorusElement x(c);
  for (int i = 0; i < terms; ++i)
    x.add_term(rng.uniform(-range, range), rng.uniform(-range, range),
               C(rng.uniform(-50, 50) / 25.0, rng.uniform(-50, 50) / 25.0));
  return x;
}

NumericTorusElement to_numeric(const ExactTorusElement& x, const TorusConfig& numeric) {
  const C t = std::polar(1.0, 2.0 * std::numbers::pi / x.config().q);
  NumericTorusElement out(numeric);
  for (const auto& [k, c] : x.terms()) out.add_term(k.first, k.second, c.to_complex(t));
  return out;
}

double distance(const NumericTorusElement& a, const NumericTorusElement& b) { return l1_norm(a - b); }

}  // namespace

TEST_CASE("torus configuration") {
  CHECK_THROWS_AS(TorusConfig::exact(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(TorusConfig::numeric(0.0), std::invalid_argument);
  CHECK_THROWS_AS(TorusConfig::numeric(1.5), std::invalid_argument);
  CHECK_THROWS_AS(ExactTorusElement(TorusConfig::numeric(0.3)), std::invalid_argument);
  CHECK_THROWS_AS(torus_mul(U(TorusConfig::exact(3, 1)), U(TorusConfig::exact(4, 1))), std::invalid_argument);
}

TEST_CASE("torus product examples") {
  const TorusConfig c = TorusConfig::exact(5, 2);
  const ExactTorusElement uv = torus_mul(U(c), V(c));
  CHECK(uv == ExactTorusElement::monomial(c, 1, 1));
  // VU = lambda^-1 UV with lambda^-1 = t^(q-p').
  CHECK(torus_mul(V(c), U(c)) == ExactTorusElement::monomial(c, 1, 1, RootOfUnityElement::t_power(5, 3)));
  // UV = lambda VU.
  CHECK(uv == torus_mul(V(c), U(c)) * RootOfUnityElement::t_power(5, 2));
  CHECK(torus_mul(U(c), U(c, -1)) == ExactTorusElement::one(c));
  CHECK(torus_mul(U(c) + V(c), ExactTorusElement::one(c)) == U(c) + V(c));
  CHECK((U(c) - U(c)).is_zero());
  CHECK((U(c) - U(c)).terms().empty());
}

TEST_CASE("torus trace and derivation examples") {
  const TorusConfig c = TorusConfig::exact(4, 1);
  CHECK(torus_trace(ExactTorusElement::one(c)) == RootOfUnityElement::constant(4, 1));
  for (long m = -2; m <= 2; ++m)
    for (long n = -2; n <= 2; ++n)
      if (m != 0 || n != 0) CHECK(torus_trace(ExactTorusElement::monomial(c, m, n)).is_zero());
  const ExactTorusElement u2v = ExactTorusElement::monomial(c, 2, 1);
  CHECK(derivation(u2v, Derivation::delta1) == u2v * RootOfUnityElement::constant(4, 2));
  CHECK(derivation(U(c, 2), Derivation::delta2).is_zero());
  const ExactTorusElement uv = torus_mul(U(c), V(c));
  CHECK(derivation(uv, Derivation::delta1) ==
        torus_mul(derivation(U(c), Derivation::delta1), V(c)) + torus_mul(U(c), derivation(V(c), Derivation::delta1)));
  CHECK(derivation(uv, Derivation::delta1) == uv);
}

TEST_CASE("property: associativity on 100 random triples, q in {3,4,5}") {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    SplitMix64 rng(derive_seed(81, trial));
    const int q = 3 + static_cast<int>(trial % 3);
    const TorusConfig c = TorusConfig::exact(q, 1 + static_cast<int>(trial % (q - 1)));
    ExactTorusElement x = random_exact(rng, c), y = random_exact(rng, c), z = random_exact(rng, c);
    CHECK(torus_mul(torus_mul(x, y), z) == torus_mul(x, torus_mul(y, z)));
  }
}

TEST_CASE("property: trace, Leibniz and commuting derivations") {
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    SplitMix64 rng(derive_seed(82, trial));
    const int q = 3 + static_cast<int>(trial % 3);
    const TorusConfig c = TorusConfig::exact(q, 1);
    ExactTorusElement x = random_exact(rng, c, 4), y = random_exact(rng, c, 4);
    CHECK(torus_trace(torus_mul(x, y)) == torus_trace(torus_mul(y, x)));
    CHECK(torus_trace_product(x, y) == torus_trace(torus_mul(x, y)));
    for (Derivation d : {Derivation::delta1, Derivation::delta2})
      CHECK(derivation(torus_mul(x, y), d) ==
            torus_mul(derivation(x, d), y) + torus_mul(x, derivation(y, d)));
    CHECK(derivation(derivation(x, Derivation::delta1), Derivation::delta2) ==
          derivation(derivation(x, Derivation::delta2), Derivation::delta1));
  }
}

TEST_CASE("cocycle examples") {
  const TorusConfig c = TorusConfig::exact(3, 1);
  const RootOfUnityElement one = RootOfUnityElement::constant(3, 1);
  CHECK(torus_cocycle(TorusCocycle::phi1, std::vector{U(c, -1), U(c)}) == one);
  SplitMix64 rng(83);
  for (int t = 0; t < 10; ++t) {
    ExactTorusElement x = random_exact(rng, c, 4);
    CHECK(torus_cocycle(TorusCocycle::phi1, std::vector{ExactTorusElement::one(c), x}).is_zero());
    CHECK(torus_cocycle(TorusCocycle::phi2, std::vector{ExactTorusElement::one(c), x}).is_zero());
  }
  CHECK(torus_cocycle(TorusCocycle::psi2, std::vector{ExactTorusElement::one(c), U(c), V(c)}).is_zero());
  CHECK_THROWS_AS(torus_cocycle(TorusCocycle::psi1, std::vector{U(c), V(c)}), std::invalid_argument);
  CHECK_THROWS_AS(torus_cocycle(TorusCocycle::phi2, std::vector{U(c), V(c), U(c)}), std::invalid_argument);
}

TEST_CASE("cocycle suite on grading-zero monomial tuples, q in {3,4,5}") {
  for (int q : {3, 4, 5}) {
    const TorusConfig c = TorusConfig::exact(q, q - 1);
    for (TorusCocycle which : {TorusCocycle::phi1, TorusCocycle::phi2, TorusCocycle::psi1, TorusCocycle::psi2}) {
      CocycleReport r = cocycle_check(which, c, 3);
      CHECK_MESSAGE(r.holds(), to_string(which), " q=", q, " ", r.counterexample.value_or(""));
      CHECK(r.cyclic_tuples > 0);
      CHECK(r.coboundary_tuples > r.cyclic_tuples);
    }
  }
}

TEST_CASE("property: cyclicity and b = 0 on random finite elements") {
  for (std::uint64_t trial = 0; trial < 24; ++trial) {
    SplitMix64 rng(derive_seed(84, trial));
    const int q = 3 + static_cast<int>(trial % 3);
    const TorusConfig c = TorusConfig::exact(q, 1);
    const TorusCocycle which = static_cast<TorusCocycle>(trial % 4);
    const int a = cocycle_arity(which);
    std::vector<ExactTorusElement> x;
    for (int s = 0; s <= a; ++s) x.push_back(random_exact(rng, c, 3, 1));
    CHECK(torus_coboundary(which, x).is_zero());
    x.pop_back();
    CHECK(torus_cyclic_defect(which, x).is_zero());
  }
}

TEST_CASE("psi1 is the arity-3 trace word under torus_trace") {
  const TorusConfig c = TorusConfig::exact(4, 3);
  SplitMix64 rng(85);
  for (int t = 0; t < 10; ++t) {
    std::vector<ExactTorusElement> x{random_exact(rng, c), random_exact(rng, c), random_exact(rng, c)};
    CHECK(torus_cocycle(TorusCocycle::psi1, x) == torus_trace(torus_mul(x[0], torus_mul(x[1], x[2]))));
  }
}

TEST_CASE("psi2 side properties") {
  const TorusConfig c = TorusConfig::exact(5, 1);
  SplitMix64 rng(86);
  const ExactTorusElement one = ExactTorusElement::one(c);
  for (int t = 0; t < 10; ++t) {
    ExactTorusElement x1 = random_exact(rng, c, 4), x2 = random_exact(rng, c, 4);
    RootOfUnityElement a = torus_cocycle(TorusCocycle::psi2, std::vector{one, x1, x2});
    CHECK(a == torus_cocycle(TorusCocycle::psi2, std::vector{one, x2, x1}));
    CHECK(a.is_zero());
  }
  // psi2(x1, x2, x2) is not identically zero once lambda != 1:
  // with x2 = U + V, delta1 x2 delta2 x2 - delta2 x2 delta1 x2 = UV - VU = (1 - lambda^-1) UV.
  const ExactTorusElement x2 = U(c) + V(c);
  const ExactTorusElement x1 = torus_mul(V(c, -1), U(c, -1));
  const RootOfUnityElement expected = RootOfUnityElement::constant(5, 1) - RootOfUnityElement::t_power(5, -1);
  CHECK(torus_cocycle(TorusCocycle::psi2, std::vector{x1, x2, x2}) == expected);
  CHECK_FALSE(expected.is_zero());
  // At lambda = 1 the algebra is commutative and the value vanishes.
  const TorusConfig flat = TorusConfig::exact(5, 0);
  CHECK(torus_cocycle(TorusCocycle::psi2, std::vector{torus_mul(V(flat, -1), U(flat, -1)), U(flat) + V(flat),
                                                      U(flat) + V(flat)})
            .is_zero());
}

TEST_CASE("exact and numeric products agree at theta = p'/q") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    SplitMix64 rng(derive_seed(87, trial));
    const int q = 3 + static_cast<int>(trial % 3);
    const int p = 1 + static_cast<int>(trial % (q - 1));
    const TorusConfig exact = TorusConfig::exact(q, p);
    const TorusConfig numeric = TorusConfig::numeric(static_cast<double>(p) / q);
    ExactTorusElement x = random_exact(rng, exact), y = random_exact(rng, exact);
    CHECK(distance(to_numeric(torus_mul(x, y), numeric), torus_mul(to_numeric(x, numeric), to_numeric(y, numeric))) <
          1e-12);
  }
}

TEST_CASE("property: l1 norm is submultiplicative") {
  const TorusConfig c = TorusConfig::numeric(std::sqrt(2.0) - 1);
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    SplitMix64 rng(derive_seed(88, trial));
    NumericTorusElement x = random_numeric(rng, c, 4), y = random_numeric(rng, c, 4);
    CHECK(l1_norm(torus_mul(x, y)) <= l1_norm(x) * l1_norm(y) * (1 + 1e-12));
  }
}

TEST_CASE("Neumann resolvent") {
  const TorusConfig c = TorusConfig::numeric(std::sqrt(2.0) - 1);
  const NumericTorusElement one = NumericTorusElement::one(c), zero(c);
  const NumericTorusElement u = NumericTorusElement::monomial(c, 1, 0), v = NumericTorusElement::monomial(c, 0, 1);
  NeumannResult trivial = neumann_resolvent({one, zero, zero}, {C(2, 1), C(5), C(-3)}, 3);
  CHECK(trivial.inverse == NumericTorusElement::scalar(c, 1.0 / C(2, 1)));
  CHECK(trivial.rho == 0.0);

  SplitMix64 rng(89);
  for (int t = 0; t < 10; ++t) {
    std::vector<NumericTorusElement> a{one, u + NumericTorusElement::monomial(c, -1, 0), v};
    std::vector<C> z{C(1 + rng.uniform(0, 10) / 10.0, rng.uniform(-5, 5) / 10.0), C(rng.uniform(-10, 10) / 100.0),
                     C(0, rng.uniform(-10, 10) / 100.0)};
    const int order = 6 + t;
    NeumannResult r = neumann_resolvent(a, z, order);
    REQUIRE(r.rho < 1);
    const NumericTorusElement az = a[0] * z[0] + a[1] * z[1] + a[2] * z[2];
    CHECK(distance(torus_mul(az, r.inverse), one) <= r.tail_bound * std::abs(z[0]) + 1e-13);
    NumericTorusElement sum(c);
    for (int i = 0; i < 3; ++i) sum += torus_mul(r.inverse, a[i]) * z[i];
    CHECK(distance(sum, one) <= r.tail_bound * std::abs(z[0]) + 1e-13);
    CHECK(l1_norm(r.remainder) <= std::pow(r.rho, order + 1) * (1 + 1e-9));
  }
  CHECK_THROWS_WITH_AS(neumann_resolvent({one, u, v}, {C(1), C(0.6), C(0.5)}, 5),
                       "Neumann series divergent at this point", std::domain_error);
  CHECK_THROWS_AS(neumann_resolvent({u, u, v}, {C(1), C(0.1), C(0.1)}, 5), std::invalid_argument);
  CHECK_THROWS_AS(neumann_resolvent({one, u, v}, {C(1), C(0.1), C(0.1)}, 0), std::invalid_argument);
}

TEST_CASE("truncated-resolvent factorization examples") {
  const TorusConfig c = TorusConfig::numeric(std::sqrt(2.0) - 1);
  const NumericTorusElement one = NumericTorusElement::one(c), zero(c);
  const NumericTorusElement u = NumericTorusElement::monomial(c, 1, 0), v = NumericTorusElement::monomial(c, 0, 1);

  FactorizationReport r = example36_factorization({one, u, v}, {{C(1), C(0.1), C(0.1)}}, 40, 1e-10);
  CHECK(r.passed);
  CHECK(r.max_residual <= r.max_bound);
  CHECK(r.max_bound <= 1e-10);
  REQUIRE(r.samples.size() == 1);
  CHECK(r.samples[0].residuals.size() == 4);
  // Only nonnegative exponents occur in W_i, and every product under the trace carries a positive one.
  CHECK(r.samples[0].q1 == 0.0);
  CHECK(r.samples[0].q2 == 0.0);

  const NumericTorusElement u_inv = NumericTorusElement::monomial(c, -1, 0);
  const NumericTorusElement v_inv = NumericTorusElement::monomial(c, 0, -1);
  FactorizationReport mixed =
      example36_factorization({one, u + v_inv * C(0.5), v + u_inv * C(0.5)}, {{C(1), C(0.1), C(0.1)}}, 40, 1e-10);
  CHECK(mixed.passed);
  CHECK(std::abs(mixed.samples[0].q1) > 0.5);

  FactorizationReport trivial = example36_factorization({one, zero, zero}, {{C(1), C(0.3), C(0.2)}}, 5, 1e-12);
  CHECK(trivial.passed);
  CHECK(trivial.max_residual == 0.0);
  CHECK(trivial.samples[0].q1 == 0.0);
  CHECK(trivial.samples[0].q2 == 0.0);

  SplitMix64 rng(90);
  std::vector<std::vector<C>> samples;
  for (int t = 0; t < 10; ++t)
    samples.push_back({C(1, rng.uniform(-3, 3) / 10.0), C(rng.uniform(-10, 10) / 80.0, rng.uniform(-10, 10) / 80.0),
                       C(rng.uniform(1, 10) / 80.0, rng.uniform(-10, 10) / 80.0)});
  samples.push_back({C(1), C(0.9), C(0.9)});
  FactorizationReport many = example36_factorization({one, u + NumericTorusElement::monomial(c, -1, 0), v}, samples, 40, 1e-9);
  CHECK(many.passed);
  CHECK(many.warnings.size() == 1);
  CHECK(many.samples.back().skipped);
  CHECK_THROWS_AS(example36_factorization({one, u, v}, {{C(1), C(2), C(0)}}, 10, 1e-9), std::domain_error);
}

TEST_CASE("torus text round trip") {
  const TorusConfig c = TorusConfig::exact(4, 1);
  CHECK(parse_exact_torus("U*V", c) == torus_mul(U(c), V(c)));
  CHECK(parse_exact_torus("V*U", c) == torus_mul(V(c), U(c)));
  CHECK(parse_exact_torus("2*U^2*V - 1/2*t^3*V^-1 + (1+i)", c) ==
        ExactTorusElement::monomial(c, 2, 1, RootOfUnityElement::constant(4, 2)) -
            ExactTorusElement::monomial(c, 0, -1, RootOfUnityElement::t_power(4, 3) * Gaussian(Rational(1, 2))) +
            ExactTorusElement::scalar(c, RootOfUnityElement::constant(4, Gaussian(1, 1))));
  CHECK(to_string(ExactTorusElement(c)) == "0");
  SplitMix64 rng(91);
  for (int t = 0; t < 30; ++t) {
    ExactTorusElement x = random_exact(rng, c, 4);
    CHECK(parse_exact_torus(to_string(x), c) == x);
  }
  const TorusConfig n = TorusConfig::numeric(0.25);
  for (int t = 0; t < 30; ++t) {
    NumericTorusElement x = random_numeric(rng, n, 4);
    CHECK(parse_numeric_torus(to_string(x), n) == x);
  }
  CHECK_THROWS_WITH_AS(parse_exact_torus("U*W", c), doctest::Contains("offset 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_numeric_torus("t*U", n), std::invalid_argument);
  CHECK_THROWS_AS(parse_exact_torus("(U+V)^-1", c), std::invalid_argument);
}
