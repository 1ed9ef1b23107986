#include "doctest.h"
#include "oracles.hpp"
#include "pspec/chenweil.hpp"
#include "pspec/forms.hpp"
#include "pspec/random.hpp"

using namespace pspec;
using oracle::P;

namespace {

ScalarForm dz(int n, int v) { return ScalarForm::differential(n, v); }

PolyMatrix unit_pencil() {
  return pencil(MatrixTuple(2, {matrix_unit(2, 0, 0), matrix_unit(2, 0, 1), matrix_unit(2, 1, 0), matrix_unit(2, 1, 1)}));
}

MatrixTuple diagonal_tuple(const std::vector<std::vector<long>>& diagonals) {
  std::vector<ScalarMatrix> ms;
  const std::size_t k = diagonals[0].size();
  for (const auto& d : diagonals) {
    ScalarMatrix m(k, k, Gaussian());
    for (std::size_t i = 0; i < k; ++i) m(i, i) = d[i];
    ms.push_back(m);
  }
  return MatrixTuple(k, std::move(ms));
}

ScalarForm random_scalar_form(SplitMix64& rng, int n, int degree) {
  ScalarForm f(n, degree);
  MultiPoly den = random_polynomial(rng, n, 1, 2) + MultiPoly::constant(n, 3);
  if (den.is_zero()) den = MultiPoly::constant(n, 1);
  for (const auto& index : multi_indices(n, degree))
    if (rng.coin(2, 3)) f.add_term(index, RatFn(random_polynomial(rng, n, 2, 3), den));
  return f;
}

MatrixForm random_matrix_form(SplitMix64& rng, int n, std::size_t k, int degree) {
  MultiPoly base = random_polynomial(rng, n, 2, 2) + MultiPoly::constant(n, 2);
  if (base.is_zero()) base = MultiPoly::constant(n, 1);
  MatrixForm f(n, k, degree, base, 1 + static_cast<int>(rng.uniform(0, 1)));
  for (const auto& index : multi_indices(n, degree)) {
    PolyMatrix m(k, k, MultiPoly(n));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = random_polynomial(rng, n, 2, 2);
    f.add_term(index, m);
  }
  return f;
}

}  // namespace

TEST_CASE("multi-index ordering and wedge signs") {
  std::vector<int> a{0, 1}, b{0, 2}, c{0};
  CHECK(MultiIndex(a) < MultiIndex(b));
  CHECK(MultiIndex(c) < MultiIndex(a));
  std::vector<int> bad{2, 1};
  CHECK_THROWS_AS(MultiIndex(std::span<const int>(bad)), std::invalid_argument);
  auto idx = multi_indices(4, 3);
  REQUIRE(idx.size() == 4);
  CHECK(idx[0].indices() == std::vector<int>{0, 1, 2});
  CHECK(idx[3].indices() == std::vector<int>{1, 2, 3});
  auto w = wedge_indices(MultiIndex::single(2), MultiIndex::from_mask(0b011));
  REQUIRE(w);
  CHECK(w->first == 1);
  CHECK_FALSE(wedge_indices(MultiIndex::single(1), MultiIndex::from_mask(0b011)).has_value());
}

TEST_CASE("wedge examples") {
  const int n = 2;
  CHECK(wedge(dz(n, 0), dz(n, 1)) == -wedge(dz(n, 1), dz(n, 0)));
  CHECK(wedge(dz(n, 0), dz(n, 0)).is_zero());
  ScalarMatrix m = ScalarMatrix::from_data(2, 2, {1, 2, 3, 4});
  ScalarMatrix nn = ScalarMatrix::from_data(2, 2, {0, 1, 1, 0});
  MatrixForm a = MatrixForm::polynomial(n, 2, 1), b = MatrixForm::polynomial(n, 2, 1);
  a.add_term(MultiIndex::single(0), to_poly_matrix(m, n));
  b.add_term(MultiIndex::single(1), to_poly_matrix(nn, n));
  MatrixForm ab = wedge(a, b);
  REQUIRE(ab.terms().size() == 1);
  CHECK(ab.terms().begin()->second == to_poly_matrix(m * nn, n));
  CHECK(wedge(b, a).terms().begin()->second == -to_poly_matrix(nn * m, n));
  CHECK_THROWS_AS(wedge(dz(2, 0), dz(3, 0)), std::invalid_argument);
}

TEST_CASE("omega ^ omega vanishes for a diagonal pencil") {
  PolyMatrix f = pencil(diagonal_tuple({{1, 2}, {1, -1}, {3, 1}}));
  MatrixForm omega = maurer_cartan(f);
  CHECK(wedge(omega, omega).is_zero());
}

TEST_CASE("exterior derivative examples") {
  const int n = 2;
  ScalarForm a = ScalarForm::monomial(n, MultiIndex::single(1), RatFn(P("z1", n)));
  CHECK(exterior_derivative(a) == wedge(dz(n, 0), dz(n, 1)));
  ScalarForm b = ScalarForm::monomial(n, MultiIndex::single(0), RatFn(P("1", n), P("z1", n)));
  CHECK(exterior_derivative(b).is_zero());
  MatrixForm omega = maurer_cartan(unit_pencil());
  CHECK(exterior_derivative(omega) == -wedge(omega, omega));
}

TEST_CASE("maurer_cartan examples") {
  MatrixForm w1 = maurer_cartan(PolyMatrix::from_data(1, 1, {P("z1", 1)}));
  CHECK(trace(w1) == ScalarForm::monomial(1, MultiIndex::single(0), RatFn(P("1", 1), P("z1", 1))));

  PolyMatrix diag = pencil(diagonal_tuple({{1, 1}, {1, -1}}));
  RatMatrix b1 = maurer_cartan(diag).coefficient(MultiIndex::single(1));
  CHECK(b1(0, 0) == RatFn(P("1", 2), P("z1+z2", 2)));
  CHECK(b1(1, 1) == RatFn(P("-1", 2), P("z1-z2", 2)));
  CHECK(b1(0, 1).is_zero());

  MatrixForm omega = maurer_cartan(unit_pencil());
  CHECK(omega.power() == 1);
  CHECK(omega.base() == P("z1*z4-z2*z3", 4));
  PolyMatrix sum(2, 2, MultiPoly(4));
  for (int i = 0; i < 4; ++i)
    sum += omega.terms().at(MultiIndex::single(i)).map([&](const MultiPoly& e) { return e * MultiPoly::variable(4, i); });
  PolyMatrix expected = poly_identity(2, 4);
  for (std::size_t r = 0; r < 2; ++r) expected(r, r) = omega.base();
  CHECK(sum == expected);

  PolyMatrix singular = PolyMatrix::from_data(2, 2, {P("z1", 2), P("z1", 2), P("z2", 2), P("z2", 2)});
  CHECK_THROWS_WITH_AS(maurer_cartan(singular), "empty resolvent set", std::domain_error);
}

TEST_CASE("evaluate_form_at") {
  // s(z) for n = 4 evaluated at (1,0,0,1).
  const int n = 4;
  ScalarForm s(n, 3);
  for (int j = 0; j < n; ++j) {
    MultiPoly c = MultiPoly::variable(n, j);
    s.add_term(MultiIndex::complement_of(n, j), RatFn(j % 2 == 0 ? -c : c));
  }
  std::vector<std::complex<double>> point{1, 0, 0, 1};
  auto v = evaluate_form_at(s, point);
  CHECK(v[MultiIndex::complement_of(n, 3)] == std::complex<double>(1));
  CHECK(v[MultiIndex::complement_of(n, 0)] == std::complex<double>(-1));
  CHECK(v[MultiIndex::complement_of(n, 1)] == std::complex<double>(0));
  CHECK(v[MultiIndex::complement_of(n, 2)] == std::complex<double>(0));

  ScalarForm pole = ScalarForm::monomial(1, MultiIndex::single(0), RatFn(P("1", 1), P("z1", 1)));
  std::vector<std::complex<double>> zero{0};
  CHECK_THROWS_AS(evaluate_form_at(pole, zero), std::domain_error);
}

TEST_CASE("symbolic d of kappa(trace) matches central differences") {
  SplitMix64 rng(31);
  MatrixTuple t = random_regular_tuple(rng, 3, 2);
  ScalarForm k = kappa(Cochain::trace_word(1, 2), pencil(t)).form;
  // Perturb so the form carries a nonzero derivative.
  ScalarForm a = wedge(k, ScalarForm::monomial(3, MultiIndex(), RatFn(P("z1^2+z2*z3", 3))));
  a = a + ScalarForm::monomial(3, MultiIndex::single(2), RatFn(P("z1*z2", 3), P("z3+5", 3)));
  ScalarForm da = exterior_derivative(a);
  for (int trial = 0; trial < 5; ++trial) {
    oracle::Point z{std::complex<double>(0.3 + 0.1 * trial, 0.2), std::complex<double>(-0.7, 0.1 * trial),
                    std::complex<double>(1.1, -0.4)};
    auto exact = evaluate_form_at(da, z);
    auto numeric = oracle::numeric_exterior_derivative(a, z);
    for (const auto& [index, value] : exact) {
      const double scale = std::max(1.0, std::abs(value));
      CHECK(std::abs(value - numeric[index]) / scale < 1e-6);
    }
    for (const auto& [index, value] : numeric)
      if (!exact.contains(index)) CHECK(std::abs(value) < 1e-6);
  }
}

TEST_CASE("property: d o d = 0 on random scalar and matrix forms") {
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    SplitMix64 rng(derive_seed(32, trial));
    const int n = 3 + static_cast<int>(trial % 2);
    const int degree = static_cast<int>(rng.uniform(0, 2));
    if (trial % 2 == 0) {
      ScalarForm f = random_scalar_form(rng, n, degree);
      CHECK(exterior_derivative(exterior_derivative(f)).is_zero());
    } else {
      MatrixForm f = random_matrix_form(rng, n, 2, degree);
      MatrixForm dd = exterior_derivative(exterior_derivative(f)).reduced();
      CHECK(dd == MatrixForm(n, 2, degree + 2, f.base(), 0));
    }
  }
}

TEST_CASE("property: flatness d omega + omega ^ omega = 0") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    SplitMix64 rng(derive_seed(33, trial));
    const std::size_t k = 2 + trial % 2;
    const std::size_t n = 2 + trial % 3;
    MatrixForm omega = maurer_cartan(pencil(random_regular_tuple(rng, n, k)));
    CHECK((exterior_derivative(omega) + wedge(omega, omega)).is_zero());
  }
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    SplitMix64 rng(derive_seed(34, trial));
    MatrixForm omega = maurer_cartan(random_quadratic_matrix(rng, 2, 3));
    CHECK((exterior_derivative(omega) + wedge(omega, omega)).is_zero());
  }
}

TEST_CASE("property: Euler identity for homogeneous f gives sum z_k B_k = m I") {
  for (std::uint64_t trial = 0; trial < 6; ++trial) {
    SplitMix64 rng(derive_seed(35, trial));
    const bool quadratic = trial % 2 == 1;
    PolyMatrix f = quadratic ? random_quadratic_matrix(rng, 2, 3) : pencil(random_regular_tuple(rng, 3, 3));
    const int m = *homogeneity_degree(f);
    CHECK(m == (quadratic ? 2 : 1));
    const int n = poly_matrix_nvars(f);
    PolyMatrix euler(f.rows(), f.cols(), MultiPoly(n));
    for (int v = 0; v < n; ++v)
      euler += partial_derivative(f, v).map([&](const MultiPoly& e) { return e * MultiPoly::variable(n, v); });
    CHECK(euler == f.map([&](const MultiPoly& e) { return e * Gaussian(m); }));
    MatrixForm omega = maurer_cartan(f);
    RatMatrix sum(f.rows(), f.rows(), RatFn(MultiPoly(n)));
    for (int v = 0; v < n; ++v)
      sum += omega.coefficient(MultiIndex::single(v)).map([&](const RatFn& e) {
        return e * RatFn(MultiPoly::variable(n, v));
      });
    for (std::size_t r = 0; r < f.rows(); ++r)
      for (std::size_t c = 0; c < f.rows(); ++c)
        CHECK(sum(r, c) == RatFn(MultiPoly::constant(n, r == c ? Gaussian(m) : Gaussian())));
  }
}

TEST_CASE("property: Leibniz rule for d on wedge products") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    SplitMix64 rng(derive_seed(36, trial));
    const int n = 4;
    const int da = static_cast<int>(rng.uniform(0, 2)), db = static_cast<int>(rng.uniform(0, 1));
    ScalarForm a = random_scalar_form(rng, n, da), b = random_scalar_form(rng, n, db);
    ScalarForm lhs = exterior_derivative(wedge(a, b));
    ScalarForm rhs = wedge(exterior_derivative(a), b);
    ScalarForm second = wedge(a, exterior_derivative(b));
    rhs = da % 2 == 0 ? rhs + second : rhs - second;
    CHECK(lhs == rhs);
  }
  SplitMix64 rng(37);
  MatrixForm a = random_matrix_form(rng, 3, 2, 1);
  CHECK(exterior_derivative(wedge(a, a)) == wedge(exterior_derivative(a), a) - wedge(a, exterior_derivative(a)));
}
