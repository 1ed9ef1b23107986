#include "pspec/chenweil.hpp"

#include <algorithm>
#include <numeric>

namespace pspec {

MaurerCartanData maurer_cartan_data(const MatrixForm& omega) {
  if (omega.degree() != 1) throw std::invalid_argument("Maurer-Cartan data needs a 1-form");
  MaurerCartanData d;
  d.nvars = omega.nvars();
  d.size = omega.size();
  d.base = omega.shared_base();
  d.power = omega.power();
  const PolyMatrix zero(d.size, d.size, MultiPoly(d.nvars));
  for (int i = 0; i < d.nvars; ++i) {
    auto it = omega.terms().find(MultiIndex::single(i));
    d.numerators.push_back(it == omega.terms().end() ? zero : it->second);
  }
  return d;
}

namespace {

int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

KappaResult kappa(const Cochain& phi, const MaurerCartanData& omega) {
  if (phi.size() != omega.size) throw std::invalid_argument("cochain and pencil have different matrix sizes");
  const int a = phi.arity();
  const int n = omega.nvars;
  KappaResult result{ScalarForm(n, a), 0, 0};
  if (a > n) return result;
  std::size_t perms = 1;
  for (int i = 2; i <= a; ++i) perms *= static_cast<std::size_t>(i);
  result.permutation_count = perms;
  std::vector<PolyMatrix> args(a);
  for (const MultiIndex& index : multi_indices(n, a)) {
    ++result.subset_count;
    std::vector<int> order = index.indices();
    MultiPoly acc(n);
    do {
      for (int s = 0; s < a; ++s) args[s] = omega.numerators[order[s]];
      MultiPoly v = phi.evaluate(args);
      if (permutation_sign(order) > 0)
        acc += v;
      else
        acc -= v;
    } while (std::next_permutation(order.begin(), order.end()));
    result.form.add_term(index, RatFn::over_power(std::move(acc), omega.base, omega.power * a));
  }
  return result;
}

KappaResult kappa(const Cochain& phi, const PolyMatrix& f) { return kappa(phi, maurer_cartan_data(maurer_cartan(f))); }

ScalarForm apply_to_forms(const Cochain& phi, std::span<const MatrixForm> forms) {
  const int a = phi.arity();
  if (static_cast<int>(forms.size()) != a) throw std::invalid_argument("apply_to_forms: arity mismatch");
  const int n = forms[0].nvars();
  int degree = 0, power = 0;
  std::optional<MultiPoly> base;
  Gaussian scale = 1;
  for (const auto& w : forms) {
    if (w.nvars() != n || w.size() != phi.size()) throw std::invalid_argument("apply_to_forms: form shape mismatch");
    degree += w.degree();
    if (w.power() == 0) continue;
    if (w.base().is_constant()) {
      Gaussian c = w.base().constant_term().inverse();
      for (int e = 0; e < w.power(); ++e) scale *= c;
      continue;
    }
    if (base && !(*base == w.base())) throw std::invalid_argument("apply_to_forms: forms over different denominators");
    base = w.base();
    power += w.power();
  }
  std::map<std::uint32_t, MultiPoly> acc;
  std::vector<const PolyMatrix*> chosen(a);
  std::vector<PolyMatrix> args(a);
  // Depth-first over one term per form, pruning overlapping indices.
  auto recurse = [&](auto& self, int slot, std::uint32_t mask, int sign) -> void {
    if (slot == a) {
      for (int s = 0; s < a; ++s) args[s] = *chosen[s];
      MultiPoly v = phi.evaluate(args);
      if (v.is_zero()) return;
      auto [it, inserted] = acc.try_emplace(mask, MultiPoly(n));
      if (sign > 0)
        it->second += v;
      else
        it->second -= v;
      return;
    }
    for (const auto& [index, m] : forms[slot].terms()) {
      auto w = wedge_indices(MultiIndex::from_mask(mask), index);
      if (!w) continue;
      chosen[slot] = &m;
      self(self, slot + 1, w->second.mask(), sign * w->first);
    }
  };
  recurse(recurse, 0, 0U, 1);
  ScalarForm out(n, degree);
  auto shared = base ? std::make_shared<const MultiPoly>(*base) : nullptr;
  for (auto& [mask, num] : acc) {
    MultiPoly scaled = scale.is_one() ? std::move(num) : num * scale;
    RatFn c = shared ? RatFn::over_power(std::move(scaled), shared, power) : RatFn(std::move(scaled));
    out.add_term(MultiIndex::from_mask(mask), c);
  }
  return out;
}

ScalarForm kappa_wedge_oracle(const Cochain& phi, const PolyMatrix& f) {
  const MatrixForm omega = maurer_cartan(f);
  std::vector<MatrixForm> forms(phi.arity(), omega);
  return apply_to_forms(phi, forms);
}

FormIdentity compare_forms(std::string name, ScalarForm lhs, ScalarForm rhs) {
  FormIdentity id{std::move(name), std::move(lhs), std::move(rhs), false};
  id.holds = id.lhs == id.rhs;
  return id;
}

CoboundaryReport theorem29_check(const Cochain& phi, const PolyMatrix& f) {
  if (!is_cyclic(phi)) throw std::invalid_argument("cochain is not cyclic");
  const int a = phi.arity();
  const MatrixForm omega = maurer_cartan(f);
  const MaurerCartanData data = maurer_cartan_data(omega);
  const ScalarForm k_phi = kappa(phi, data).form;
  const ScalarForm k_bphi = kappa(coboundary(phi), data).form;
  const ScalarForm d_k_phi = exterior_derivative(k_phi);
  std::vector<MatrixForm> slots(a, omega);
  slots[0] = exterior_derivative(omega);
  const ScalarForm phi_domega = apply_to_forms(phi, slots);
  const int n = f.rows() ? poly_matrix_nvars(f) : 0;
  auto scalar = [n](Rational r) { return RatFn(MultiPoly::constant(n, Gaussian(std::move(r)))); };

  CoboundaryReport report;
  report.cyclic = compare_forms("(a/(a+1)) kappa(b phi) = -d kappa(phi)", k_bphi * scalar(Rational(a, a + 1)),
                                 -d_k_phi);
  report.expansion = compare_forms("kappa(b phi) = -d kappa(phi) - phi(d omega, omega, ..)", k_bphi,
                                 -d_k_phi - phi_domega);
  report.correction = compare_forms("phi(d omega, omega, ..) = -(1/(a+1)) kappa(b phi)", phi_domega,
                                 k_bphi * scalar(Rational(-1, a + 1)));
  return report;
}

// ---------------------------------------------------------------------------

ScalarForm tau(const Cochain& f_functional, const PolyMatrix& f, const TauOptions& options) {
  InvarianceReport inv = invariance_test(f_functional, options.trials, options.seed, options.group);
  if (!inv.passed)
    throw std::domain_error("tau needs an invariant functional; " + f_functional.describe() +
                            " failed the invariance test at trial " + std::to_string(inv.failing_trial));
  return kappa(f_functional, f).form;
}

ScalarForm tau_unit(int nvars) { return ScalarForm::constant(RatFn(MultiPoly::constant(nvars, 1))); }

FormIdentity tau_multiplicativity(const Cochain& f1, const Cochain& f2, const PolyMatrix& f,
                                  const TauOptions& options) {
  ScalarForm product = tau(Cochain::product(f1, f2), f, options);
  return compare_forms("tau(F1 x F2) = tau(F1) ^ tau(F2)", std::move(product),
                       wedge(tau(f1, f, options), tau(f2, f, options)));
}

FormIdentity tau_closedness(const Cochain& f_functional, const PolyMatrix& f, const TauOptions& options) {
  ScalarForm t = tau(f_functional, f, options);
  ScalarForm dt = exterior_derivative(t);
  ScalarForm zero(dt.nvars(), dt.degree());
  return compare_forms("d tau(F) = 0", std::move(dt), std::move(zero));
}

// ---------------------------------------------------------------------------

bool HyperplaneDecomposition::holds() const {
  if (!product_matches_det) return false;
  for (const auto& m : log_derivative_matches)
    if (m && !*m) return false;
  return !product_tau_matches || *product_tau_matches;
}

HyperplaneDecomposition hyperplane_decomposition(const MatrixTuple& tuple) {
  const std::size_t k = tuple.size();
  const int n = static_cast<int>(tuple.count());
  for (std::size_t j = 0; j < tuple.count(); ++j)
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c)
        if (r != c && !tuple[j](r, c).is_zero())
          throw std::invalid_argument("hyperplane decomposition needs simultaneously diagonal matrices; A_" +
                                      std::to_string(j + 1) + " has a nonzero off-diagonal entry, diagonalize first");
  HyperplaneDecomposition out;
  MultiPoly product = MultiPoly::constant(n, 1);
  for (std::size_t i = 0; i < k; ++i) {
    MultiPoly ell(n);
    for (int j = 0; j < n; ++j) ell += MultiPoly::variable(n, j) * tuple[j](i, i);
    product = product * ell;
    if (ell.is_zero()) out.whole_space = true;
    auto same = std::find_if(out.hyperplanes.begin(), out.hyperplanes.end(),
                             [&](const Hyperplane& h) { return h.ell == ell; });
    if (same == out.hyperplanes.end()) {
      out.hyperplanes.push_back({ell, 1, {i}});
    } else {
      ++same->multiplicity;
      same->coordinates.push_back(i);
    }
    out.coordinate_forms.push_back(std::move(ell));
  }
  const PolyMatrix a = pencil(tuple);
  out.product_matches_det = product == determinant(a);
  if (out.whole_space) {
    out.log_derivative_matches.assign(k, std::nullopt);
    return out;
  }
  const MaurerCartanData omega = maurer_cartan_data(maurer_cartan(a));
  ScalarForm wedge_all = tau_unit(n);
  Cochain product_functional = Cochain::entry_functional(k, 0, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const MultiPoly& ell = out.coordinate_forms[i];
    Cochain coord = Cochain::entry_functional(k, i, i);
    ScalarForm kc = kappa(coord, omega).form;
    ScalarForm dlog(n, 1);
    for (int v = 0; v < n; ++v) dlog.add_term(MultiIndex::single(v), RatFn(ell.partial_derivative(v), ell));
    out.log_derivative_matches.push_back(kc == dlog);
    wedge_all = wedge(wedge_all, kc);
    if (i > 0) product_functional = Cochain::product(product_functional, coord);
  }
  TauOptions options;
  options.group = ConjugationGroup::diagonal;
  out.product_tau_matches = tau(product_functional, a, options) == wedge_all;
  return out;
}

}  // namespace pspec
