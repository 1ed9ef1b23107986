#include "pspec/jacobi.hpp"

#include <algorithm>
#include <sstream>

namespace pspec {

namespace {

int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

void check_power(const PolyMatrix& f, int m, const Cochain& phi) {
  const int n = poly_matrix_nvars(f);
  if (m < 1 || m > n) throw std::invalid_argument("trace power m must satisfy 1 <= m <= n");
  if (phi.arity() != m) throw std::invalid_argument("cochain arity must equal the trace power");
  if (phi.size() != f.rows()) throw std::invalid_argument("cochain and pencil have different matrix sizes");
}

std::string one_based(const MultiIndex& index) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int i : index.indices()) {
    out << (first ? "" : ",") << i + 1;
    first = false;
  }
  out << '}';
  return out.str();
}

// Least e with q det^e polynomial, searched up to the denominator degree.
std::optional<int> det_exponent(const RatFn& q, const MultiPoly& det) {
  if (q.is_zero()) return std::nullopt;
  const RatFn r = q.reduced();
  if (r.is_polynomial()) return 0;
  if (det.is_constant()) return std::nullopt;
  MultiPoly num = r.num(), den = r.den();
  for (int e = 1; e <= den.total_degree(); ++e) {
    num = num * det;
    if (exact_divide(num, den)) return e;
  }
  return std::nullopt;
}

}  // namespace

ScalarForm s_form(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("s(z) needs an even number of variables n >= 2");
  ScalarForm s(n, n - 1);
  for (int v = 0; v < n; ++v) {
    MultiPoly c = MultiPoly::variable(n, v);
    if (v % 2 == 0) c = -c;
    s.add_term(MultiIndex::complement_of(n, v), RatFn(std::move(c)));
  }
  return s;
}

ScalarForm trace_power_wedge(const PolyMatrix& f, int m, const Cochain& phi) {
  check_power(f, m, phi);
  const MatrixForm omega = maurer_cartan(f);
  if (phi.kind() == Cochain::Kind::trace_word) return trace(wedge_power(omega, m));
  std::vector<MatrixForm> slots(m, omega);
  return apply_to_forms(phi, slots);
}

ScalarForm trace_power_anchored(const PolyMatrix& f, int m, const Cochain& phi) {
  check_power(f, m, phi);
  if (m % 2 == 0) throw std::invalid_argument("anchored trace power expansion needs odd m");
  const MaurerCartanData omega = maurer_cartan_data(maurer_cartan(f));
  const int n = omega.nvars;
  ScalarForm out(n, m);
  std::vector<PolyMatrix> args(m);
  for (const MultiIndex& index : multi_indices(n, m)) {
    std::vector<int> order = index.indices();
    MultiPoly acc(n);
    do {
      for (int s = 0; s < m; ++s) args[s] = omega.numerators[order[s]];
      MultiPoly v = phi.evaluate(args);
      if (permutation_sign(order) > 0)
        acc += v;
      else
        acc -= v;
    } while (std::next_permutation(order.begin() + 1, order.end()));
    acc = acc * Gaussian(m);
    out.add_term(index, RatFn::over_power(std::move(acc), omega.base, omega.power * m));
  }
  return out;
}

ScalarForm trace_power_form(const PolyMatrix& f, int m, const Cochain& phi) {
  ScalarForm wedge_path = trace_power_wedge(f, m, phi);
  if (m % 2 == 1 && !(trace_power_anchored(f, m, phi) == wedge_path))
    throw std::logic_error("anchored and wedge-power expansions of phi(omega^m) differ");
  return wedge_path;
}

TopFormFactorization factorize_top_form(const PolyMatrix& f, const Cochain& phi) {
  const int n = poly_matrix_nvars(f);
  if (n % 2 != 0) throw std::invalid_argument("top-form factorization needs an even number of variables");
  if (!homogeneity_degree(f)) throw std::invalid_argument("top-form factorization needs homogeneous entries");
  if (phi.arity() != n - 1) throw std::invalid_argument("top-form factorization needs a cochain of arity n-1");

  TopFormFactorization out;
  const ScalarForm t = trace_power_form(f, n - 1, phi);
  out.s = s_form(n);
  std::vector<RatFn> ratios;
  for (int v = 0; v < n; ++v) {
    const MultiIndex bar = MultiIndex::complement_of(n, v);
    const RatFn c = t.coefficient(bar);
    out.barI.push_back(c * Gaussian(Rational(1, n - 1)));
    MultiPoly zj = MultiPoly::variable(n, v);
    if (v % 2 == 0) zj = -zj;
    if (c.is_zero()) {
      ratios.push_back(RatFn(MultiPoly(n)));
    } else if (auto num = exact_divide(c.num(), zj); num && c.base()) {
      ratios.push_back(RatFn::over_power(std::move(*num), c.base(), c.power()));
    } else {
      ratios.push_back(RatFn(c.num(), c.den() * zj));
    }
  }
  for (int v = 1; v < n; ++v)
    if (!(ratios[v] == ratios[0]))
      throw std::domain_error("phi(omega^(n-1)) / s(z) ratios disagree on dz" +
                              one_based(MultiIndex::complement_of(n, 0)) + " and dz" +
                              one_based(MultiIndex::complement_of(n, v)));
  out.q = ratios[n - 1].reduced();

  out.relations_hold = true;
  const RatFn zn(MultiPoly::variable(n, n - 1));
  for (int i = 0; i + 1 < n; ++i) {
    const RatFn zi(MultiPoly::variable(n, i));
    RatFn rhs = zn * out.barI[i];
    if (i % 2 == 0) rhs = -rhs;
    if (!(zi * out.barI[n - 1] == rhs)) out.relations_hold = false;
  }
  out.residual = (t - out.s * out.q).reduced();
  out.det_power = det_exponent(out.q, determinant(f));
  return out;
}

PencilCubicData theorem33_p(const MatrixTuple& a) {
  if (a.count() != 4) throw std::invalid_argument("cubic invariant needs a 4-matrix tuple");
  const int n = 4;
  const std::size_t k = a.size();
  PencilCubicData out;
  const PolyMatrix f = pencil(a);
  out.det = determinant(f);
  if (out.det.is_zero()) throw std::domain_error("empty resolvent set");
  out.det_squared = out.det * out.det;
  const PolyMatrix b = adjugate(f);
  std::vector<PolyMatrix> ba;
  for (std::size_t i = 0; i < 4; ++i) ba.push_back(b * to_poly_matrix(a[i], n));

  auto shared_det = std::make_shared<const MultiPoly>(out.det);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int l = j + 1; l < 4; ++l) {
        MultiPoly num = trace(ba[i] * ba[j] * ba[l] - ba[i] * ba[l] * ba[j]);
        out.I.emplace(IndexTriple{i, j, l}, RatFn::over_power(std::move(num), shared_det, 3));
      }

  out.factorization = factorize_top_form(f, Cochain::trace_word(3, k));
  const RatFn p = (out.factorization.q * RatFn(out.det_squared) * Gaussian(Rational(1, 3))).reduced();
  if (!p.is_polynomial()) throw std::domain_error("det^2 tr(omega^3) / (3 s) is not a polynomial");
  out.p = p.num() * p.den().constant_term().inverse();
  const int expected = 2 * static_cast<int>(k) - 4;
  if (!out.p.is_zero()) {
    out.p_degree = homogeneity_degree(out.p);
    if (out.p_degree != expected)
      throw std::domain_error("p(z) is not homogeneous of degree 2k-4");
  }

  out.cubic_numerator = trace(ba[0] * ba[1] * ba[2] - ba[0] * ba[2] * ba[1]);
  auto quotient = exact_divide(out.cubic_numerator, out.det);
  if (!quotient) throw std::domain_error("cubic trace numerator is not divisible by det(A(z))");
  out.cubic_quotient = std::move(*quotient);
  out.quotient_matches_p = out.cubic_quotient == MultiPoly::variable(n, 3) * out.p;
  return out;
}

Gaussian example35_constant(const MatrixTuple& a) {
  if (a.size() != 2 || a.count() != 4) throw std::invalid_argument("closed-form constant needs k = 2 and n = 4");
  ScalarMatrix entries(4, 4, Gaussian());
  for (std::size_t j = 0; j < 4; ++j) {
    entries(0, j) = a[j](0, 0);
    entries(1, j) = a[j](0, 1);
    entries(2, j) = a[j](1, 0);
    entries(3, j) = a[j](1, 1);
  }
  return -determinant(entries);
}

}  // namespace pspec
