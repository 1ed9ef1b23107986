#include "doctest.h"
#include "oracles.hpp"
#include "pspec/chenweil.hpp"

using namespace pspec;
using oracle::P;

namespace {

MatrixTuple unit_tuple() {
  return MatrixTuple(2, {matrix_unit(2, 0, 0), matrix_unit(2, 0, 1), matrix_unit(2, 1, 0), matrix_unit(2, 1, 1)});
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

ScalarForm dlog(const MultiPoly& p) {
  ScalarForm f(p.nvars(), 1);
  for (int v = 0; v < p.nvars(); ++v) f.add_term(MultiIndex::single(v), RatFn(p.partial_derivative(v), p));
  return f;
}

}  // namespace

TEST_CASE("kappa(trace) is d log det") {
  for (std::uint64_t trial = 0; trial < 6; ++trial) {
    SplitMix64 rng(derive_seed(51, trial));
    PolyMatrix f = trial < 3 ? pencil(random_regular_tuple(rng, 3, 2 + trial % 2)) : random_quadratic_matrix(rng, 2, 3);
    KappaResult k = kappa(Cochain::trace_word(1, f.rows()), f);
    CHECK(k.form == dlog(determinant(f)));
    CHECK(k.subset_count == 3);
    CHECK(k.permutation_count == 1);
  }
}

TEST_CASE("kappa of the arity-2 trace word vanishes") {
  SplitMix64 rng(52);
  PolyMatrix f = pencil(random_regular_tuple(rng, 4, 3));
  KappaResult k = kappa(Cochain::trace_word(2, 3), f);
  CHECK(k.form.is_zero());
  CHECK(k.subset_count == 6);
  CHECK(k.permutation_count == 2);
}

TEST_CASE("kappa of arity above n is the zero form") {
  KappaResult k = kappa(Cochain::trace_word(3, 2), pencil(MatrixTuple(2, {matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)})));
  CHECK(k.form.is_zero());
  CHECK(k.form.degree() == 3);
}

TEST_CASE("kappa_wedge_oracle basics") {
  PolyMatrix f = pencil(unit_tuple());
  CHECK(kappa_wedge_oracle(Cochain::zero(2, 2), f).is_zero());
  Cochain e12 = Cochain::entry_functional(2, 0, 1);
  MatrixForm omega = maurer_cartan(f);
  ScalarForm direct(4, 1);
  for (int i = 0; i < 4; ++i) direct.add_term(MultiIndex::single(i), omega.coefficient(MultiIndex::single(i))(0, 1));
  CHECK(kappa_wedge_oracle(e12, f) == direct);
  CHECK(kappa(e12, f).form == direct);
  CHECK_THROWS_WITH_AS(kappa(e12, PolyMatrix::from_data(2, 2, {P("z1", 1), P("z1", 1), P("z1", 1), P("z1", 1)})),
                       "empty resolvent set", std::domain_error);
}

TEST_CASE("property: kappa equals the wedge oracle on 20 random pairs") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    SplitMix64 rng(derive_seed(53, trial));
    const std::size_t k = 2 + trial % 2;
    const std::size_t n = 3 + (trial / 2) % 2;
    const int a = 1 + static_cast<int>(trial % 3);
    PolyMatrix f = pencil(random_regular_tuple(rng, n, k));
    Cochain phi = (k == 3 && a == 3) ? Cochain::trace_word(3, 3) : random_dense_cochain(rng, a, k);
    CHECK(kappa(phi, f).form == kappa_wedge_oracle(phi, f));
  }
}

TEST_CASE("kappa coboundary identity examples") {
  SplitMix64 rng(54);
  PolyMatrix f = pencil(random_regular_tuple(rng, 3, 2));
  CoboundaryReport tr = theorem29_check(Cochain::trace_word(1, 2), f);
  CHECK(tr.holds());
  CHECK(tr.cyclic.lhs.is_zero());
  CHECK(tr.cyclic.rhs.is_zero());

  CoboundaryReport tr3 = theorem29_check(Cochain::trace_word(3, 2), pencil(random_regular_tuple(rng, 4, 2)));
  CHECK(tr3.holds());
  CHECK(tr3.cyclic.rhs.is_zero());

  Cochain phi = cyclic_symmetrize(random_dense_cochain(rng, 2, 2));
  CoboundaryReport dense = theorem29_check(phi, f);
  CHECK(dense.cyclic.holds);
  CHECK(dense.expansion.holds);
  CHECK(dense.correction.holds);
  CHECK_FALSE(dense.cyclic.lhs.is_zero());

  CHECK_THROWS_AS(theorem29_check(Cochain::trace_word(2, 2), f), std::invalid_argument);
}

TEST_CASE("property: kappa coboundary identity over cyclic cochains of arity 1..3") {
  for (std::uint64_t trial = 0; trial < 9; ++trial) {
    SplitMix64 rng(derive_seed(55, trial));
    const int a = 1 + static_cast<int>(trial % 3);
    const std::size_t n = 3 + trial % 2;
    PolyMatrix f = pencil(random_regular_tuple(rng, n, 2));
    Cochain phi = cyclic_symmetrize(random_dense_cochain(rng, a, 2));
    CoboundaryReport r = theorem29_check(phi, f);
    CHECK(r.cyclic.holds);
    CHECK(r.expansion.holds);
    CHECK(r.correction.holds);
  }
}

TEST_CASE("non-cyclic cochains satisfy the expansion but not the cyclic factor") {
  // The expansion holds for every cochain; the factor a/(a+1) needs cyclicity.
  SplitMix64 rng(56);
  PolyMatrix f = pencil(random_regular_tuple(rng, 3, 2));
  Cochain phi = random_dense_cochain(rng, 2, 2);
  REQUIRE_FALSE(is_cyclic(phi));
  const MatrixForm omega = maurer_cartan(f);
  ScalarForm k_bphi = kappa(coboundary(phi), f).form;
  ScalarForm d_k = exterior_derivative(kappa(phi, f).form);
  std::vector<MatrixForm> slots{exterior_derivative(omega), omega};
  ScalarForm phi_domega = apply_to_forms(phi, slots);
  CHECK(k_bphi == -d_k - phi_domega);
  CHECK_FALSE(k_bphi * RatFn(MultiPoly::constant(3, Gaussian(Rational(2, 3)))) == -d_k);
}

TEST_CASE("tau examples") {
  PolyMatrix f = pencil(diagonal_tuple({{1, 2}, {1, -1}, {0, 3}}));
  ScalarForm t = tau(Cochain::trace_word(1, 2), f);
  CHECK(t == dlog(P("z1+z2", 3)) + dlog(P("2*z1-z2+3*z3", 3)));
  CHECK(tau_unit(3).degree() == 0);
  CHECK(tau_unit(3).coefficient(MultiIndex()) == RatFn(MultiPoly::constant(3, 1)));
  CHECK_THROWS_AS(tau(Cochain::entry_functional(2, 0, 0), pencil(unit_tuple())), std::domain_error);

  TauOptions diag;
  diag.group = ConjugationGroup::diagonal;
  Cochain c1 = Cochain::entry_functional(2, 0, 0), c2 = Cochain::entry_functional(2, 1, 1);
  FormIdentity m = tau_multiplicativity(c1, c2, f, diag);
  CHECK(m.holds);
  CHECK(m.rhs == wedge(dlog(P("z1+z2", 3)), dlog(P("2*z1-z2+3*z3", 3))));
}

TEST_CASE("property: tau multiplicativity and closedness") {
  Cochain tr = Cochain::trace_word(1, 2);
  Cochain tr3 = Cochain::trace_word(3, 2);
  for (std::uint64_t trial = 0; trial < 4; ++trial) {
    SplitMix64 rng(derive_seed(57, trial));
    PolyMatrix f = pencil(random_regular_tuple(rng, 4, 2));
    TauOptions options;
    options.seed = trial;
    CHECK(tau_multiplicativity(tr, tr, f, options).holds);
    CHECK(tau_multiplicativity(tr, tr3, f, options).holds);
    CHECK(tau_closedness(tr, f, options).holds);
    CHECK(tau_closedness(tr3, f, options).holds);
    CHECK(tau_closedness(Cochain::product(tr, tr), f, options).holds);
  }
}

TEST_CASE("hyperplane decomposition examples") {
  HyperplaneDecomposition h = hyperplane_decomposition(diagonal_tuple({{1, 1}, {1, -1}}));
  REQUIRE(h.coordinate_forms.size() == 2);
  CHECK(h.coordinate_forms[0] == P("z1+z2", 2));
  CHECK(h.coordinate_forms[1] == P("z1-z2", 2));
  CHECK(h.product_matches_det);
  CHECK_FALSE(h.whole_space);
  CHECK(h.holds());

  HyperplaneDecomposition whole = hyperplane_decomposition(diagonal_tuple({{1, 0}, {2, 0}}));
  CHECK(whole.whole_space);
  CHECK(whole.product_matches_det);

  HyperplaneDecomposition repeated = hyperplane_decomposition(diagonal_tuple({{1, 1, 2}, {1, 1, 0}}));
  REQUIRE(repeated.hyperplanes.size() == 2);
  CHECK(repeated.hyperplanes[0].multiplicity == 2);
  CHECK(repeated.holds());

  CHECK_THROWS_WITH_AS(hyperplane_decomposition(unit_tuple()), doctest::Contains("diagonalize"),
                       std::invalid_argument);
}

TEST_CASE("property: random diagonal tuples factor the determinant into linear forms") {
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    SplitMix64 rng(derive_seed(58, trial));
    std::vector<std::vector<long>> diag(3, std::vector<long>(3));
    for (auto& d : diag)
      for (auto& x : d) x = rng.uniform(-3, 3);
    MatrixTuple t = diagonal_tuple(diag);
    HyperplaneDecomposition h = hyperplane_decomposition(t);
    CHECK(h.coordinate_forms.size() == 3);
    CHECK(h.holds());
    if (!h.whole_space) {
      REQUIRE(h.product_tau_matches.has_value());
      CHECK(*h.product_tau_matches);
    }
  }
}
