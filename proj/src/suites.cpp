#include "pspec/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "pspec/chenweil.hpp"
#include "pspec/cochain.hpp"
#include "pspec/forms.hpp"
#include "pspec/jacobi.hpp"
#include "pspec/random.hpp"
#include "pspec/torus.hpp"

namespace pspec {

namespace {

using C = std::complex<double>;

/// Empty when the tuple is acceptable, else the reason it is not.
using ShapeCheck = std::function<std::string(const MatrixTuple&)>;

std::string any_shape(const MatrixTuple&) { return {}; }

class LineBuilder {
 public:
  LineBuilder(std::string suite, std::string name) {
    line_.suite = std::move(suite);
    line_.name = std::move(name);
  }

  /// Runs one trial; an exception counts as a failure carrying its message.
  void trial(const std::function<bool(Json&)>& check) {
    ++line_.trials;
    Json cx = Json::object();
    bool ok = false;
    try {
      ok = check(cx);
    } catch (const std::exception& e) {
      cx["error"] = e.what();
    }
    if (!ok) {
      if (line_.passed) line_.counterexample = std::move(cx);
      line_.passed = false;
      ++failures_;
    }
  }

  CheckLine finish(const std::string& extra = {}) {
    line_.detail = std::to_string(line_.trials - failures_) + "/" + std::to_string(line_.trials) + " trials";
    if (!extra.empty()) line_.detail += ", " + extra;
    return std::move(line_);
  }

  static CheckLine skipped(std::string suite, std::string name, std::string reason) {
    CheckLine l;
    l.suite = std::move(suite);
    l.name = std::move(name);
    l.skipped = true;
    l.detail = "skipped: " + reason;
    return l;
  }

 private:
  CheckLine line_;
  std::size_t failures_ = 0;
};

std::size_t trial_count(const SuiteOptions& o, std::size_t fallback) {
  return o.trials > 0 ? static_cast<std::size_t>(o.trials) : fallback;
}

SplitMix64 trial_rng(const SuiteOptions& o, std::uint64_t salt, std::size_t t) {
  return SplitMix64(derive_seed(derive_seed(o.seed, salt), t));
}

Json trial_json(const SuiteOptions& o, std::uint64_t salt, std::size_t t) {
  Json j;
  j["seed"] = o.seed;
  j["salt"] = salt;
  j["trial"] = t;
  return j;
}

/// Runs `check` on the input tuple when present and shaped right, otherwise
/// on `count` tuples from `gen`.
CheckLine tuple_line(const std::string& suite, const std::string& name, const SuiteOptions& o, std::uint64_t salt,
                     std::size_t count, const ShapeCheck& shape,
                     const std::function<MatrixTuple(SplitMix64&, std::size_t)>& gen,
                     const std::function<bool(const MatrixTuple&, SplitMix64&, Json&)>& check,
                     const std::function<std::string()>& extra = {}) {
  LineBuilder line(suite, name);
  if (o.input) {
    const std::string reason = shape(*o.input);
    if (!reason.empty()) return LineBuilder::skipped(suite, name, "input " + reason);
    SplitMix64 rng = trial_rng(o, salt, 0);
    line.trial([&](Json& cx) {
      cx["tuple"] = tuple_to_json(*o.input);
      return check(*o.input, rng, cx);
    });
    return line.finish(extra ? extra() : std::string());
  }
  const std::size_t n = trial_count(o, count);
  for (std::size_t t = 0; t < n; ++t) {
    SplitMix64 rng = trial_rng(o, salt, t);
    line.trial([&](Json& cx) {
      cx = trial_json(o, salt, t);
      MatrixTuple tuple = gen(rng, t);
      cx["tuple"] = tuple_to_json(tuple);
      return check(tuple, rng, cx);
    });
  }
  return line.finish(extra ? extra() : std::string());
}

CheckLine plain_line(const std::string& suite, const std::string& name, const SuiteOptions& o, std::uint64_t salt,
                     std::size_t count, const std::function<bool(SplitMix64&, std::size_t, Json&)>& check,
                     bool fixed_count = false) {
  LineBuilder line(suite, name);
  const std::size_t n = fixed_count ? count : trial_count(o, count);
  for (std::size_t t = 0; t < n; ++t) {
    SplitMix64 rng = trial_rng(o, salt, t);
    line.trial([&](Json& cx) {
      cx = trial_json(o, salt, t);
      return check(rng, t, cx);
    });
  }
  return line.finish();
}

bool form_zero(const ScalarForm& f, Json& cx, const char* key = "nonzero form") {
  if (f.is_zero()) return true;
  cx[key] = form_to_json(f.reduced());
  return false;
}

bool identity_holds(const FormIdentity& id, Json& cx) {
  if (id.holds) return true;
  cx["identity"] = id.name;
  cx["lhs"] = form_to_json(id.lhs.reduced());
  cx["rhs"] = form_to_json(id.rhs.reduced());
  return false;
}

bool cochain_is_zero(const Cochain& phi) {
  const Cochain dense = densify(phi);
  for (const auto& c : dense.coefficients())
    if (!c.is_zero()) return false;
  return true;
}

std::string need_n(const MatrixTuple& t, std::size_t lo, std::size_t hi) {
  if (t.count() < lo || t.count() > hi)
    return "needs " + (lo == hi ? "n = " + std::to_string(lo) : "n in " + std::to_string(lo) + ".." + std::to_string(hi));
  return {};
}

std::string need_k(const MatrixTuple& t, std::size_t k) {
  return t.size() == k ? std::string() : "needs k = " + std::to_string(k);
}

// --- form suites ------------------------------------------------------------

std::vector<CheckLine> flatness(const SuiteOptions& o) {
  const std::string s = "flatness";
  std::vector<CheckLine> out;
  out.push_back(tuple_line(
      s, "d omega + omega ^ omega = 0 on pencils", o, 1, 20, any_shape,
      [](SplitMix64& rng, std::size_t t) { return random_regular_tuple(rng, 2 + t % 3, 2 + t % 2); },
      [](const MatrixTuple& a, SplitMix64&, Json& cx) {
        MatrixForm omega = maurer_cartan(pencil(a));
        MatrixForm defect = exterior_derivative(omega) + wedge(omega, omega);
        if (defect.is_zero()) return true;
        cx["nonzero"] = matrix_form_to_json(defect.reduced());
        return false;
      }));
  out.push_back(plain_line(s, "d omega + omega ^ omega = 0 on quadratic matrices", o, 2, 5,
                           [](SplitMix64& rng, std::size_t, Json& cx) {
                             PolyMatrix f = random_quadratic_matrix(rng, 2, 3);
                             cx["f"] = poly_matrix_to_json(f);
                             MatrixForm omega = maurer_cartan(f);
                             return (exterior_derivative(omega) + wedge(omega, omega)).is_zero();
                           }));
  return out;
}

std::vector<CheckLine> theorem29(const SuiteOptions& o) {
  const std::string s = "theorem29";
  std::vector<CheckLine> out;

  // Each trial pairs one pencil with a cyclicized dense cochain and, for odd
  // arity, the trace word of that arity.
  LineBuilder cyclic(s, "(a/(a+1)) kappa(b phi) = -d kappa(phi)");
  LineBuilder expansion(s, "kappa(b phi) = -d kappa(phi) - phi(d omega, omega, ..)");
  LineBuilder correction(s, "phi(d omega, omega, ..) = -(1/(a+1)) kappa(b phi)");
  auto run = [&](const PolyMatrix& f, const Cochain& phi, Json base) {
    base["cochain"] = cochain_to_json(phi);
    std::optional<CoboundaryReport> r;
    try {
      r = theorem29_check(phi, f);
    } catch (const std::exception& e) {
      base["error"] = e.what();
    }
    cyclic.trial([&](Json& cx) {
      cx = base;
      return r && identity_holds(r->cyclic, cx);
    });
    expansion.trial([&](Json& cx) {
      cx = base;
      return r && identity_holds(r->expansion, cx);
    });
    correction.trial([&](Json& cx) {
      cx = base;
      return r && identity_holds(r->correction, cx);
    });
  };
  if (o.input) {
    const PolyMatrix f = pencil(*o.input);
    SplitMix64 rng = trial_rng(o, 3, 0);
    for (int a = 1; a <= 3; ++a) {
      Json base;
      base["tuple"] = tuple_to_json(*o.input);
      run(f, cyclic_symmetrize(random_dense_cochain(rng, a, o.input->size())), base);
      if (a % 2 == 1) run(f, Cochain::trace_word(a, o.input->size()), base);
    }
  } else {
    const std::size_t n = trial_count(o, 12);
    for (std::size_t t = 0; t < n; ++t) {
      SplitMix64 rng = trial_rng(o, 3, t);
      const int a = 1 + static_cast<int>(t % 3);
      MatrixTuple tuple = random_regular_tuple(rng, 3 + (t / 3) % 2, 2);
      Json base = trial_json(o, 3, t);
      base["tuple"] = tuple_to_json(tuple);
      const PolyMatrix f = pencil(tuple);
      run(f, cyclic_symmetrize(random_dense_cochain(rng, a, 2)), base);
      if (a % 2 == 1) run(f, Cochain::trace_word(a, 2), base);
    }
  }
  out.push_back(cyclic.finish());
  out.push_back(expansion.finish());
  out.push_back(correction.finish());

  out.push_back(tuple_line(
      s, "kappa equals the wedge oracle", o, 4, 20, any_shape,
      [](SplitMix64& rng, std::size_t t) { return random_regular_tuple(rng, 3 + (t / 2) % 2, 2 + t % 2); },
      [](const MatrixTuple& tuple, SplitMix64& rng, Json& cx) {
        const int a = 1 + static_cast<int>(rng.uniform(0, 2));
        const std::size_t k = tuple.size();
        Cochain phi = (k >= 3 && a == 3) ? Cochain::trace_word(3, k) : random_dense_cochain(rng, a, k);
        cx["cochain"] = cochain_to_json(phi);
        const PolyMatrix f = pencil(tuple);
        return identity_holds(compare_forms("kappa = oracle", kappa(phi, f).form, kappa_wedge_oracle(phi, f)), cx);
      }));

  out.push_back(plain_line(
      s, "b o b = 0", o, 5, 5,
      [](SplitMix64& rng, std::size_t t, Json& cx) {
        const int a = t < 3 ? static_cast<int>(t) + 1 : static_cast<int>(t) - 2;
        const std::size_t k = t < 3 ? 2 : 3;
        Cochain phi = random_dense_cochain(rng, a, k);
        cx["cochain"] = cochain_to_json(phi);
        return cochain_is_zero(coboundary(coboundary(phi)));
      },
      true));
  out.push_back(plain_line(s, "b preserves cyclicity", o, 6, 50, [](SplitMix64& rng, std::size_t t, Json& cx) {
    Cochain phi = cyclic_symmetrize(random_dense_cochain(rng, 1 + static_cast<int>(t % 3), 2));
    cx["cochain"] = cochain_to_json(phi);
    return is_cyclic(phi) && is_cyclic(coboundary(phi));
  }));
  out.push_back(plain_line(
      s, "b(trace) = 0", o, 7, 3,
      [](SplitMix64&, std::size_t t, Json& cx) {
        cx["k"] = t + 1;
        return cochain_is_zero(coboundary(Cochain::trace_word(1, t + 1)));
      },
      true));
  const std::vector<std::pair<int, std::size_t>> words{{1, 2}, {1, 3}, {3, 2}, {3, 3}, {5, 2}};
  out.push_back(plain_line(
      s, "odd-arity trace words are cyclic cocycles", o, 8, words.size(),
      [&](SplitMix64&, std::size_t t, Json& cx) {
        const auto [a, k] = words[t];
        cx["arity"] = a;
        cx["k"] = k;
        Cochain tr = Cochain::trace_word(a, k);
        return is_cyclic(tr) && cochain_is_zero(coboundary(tr));
      },
      true));
  return out;
}

std::vector<CheckLine> jacobi_classic(const SuiteOptions& o) {
  const std::string s = "jacobi-classic";
  auto check_f = [](const PolyMatrix& f, Json& cx) {
    const PolyMatrix adj = adjugate(f);
    const MultiPoly det = determinant(f);
    for (int i = 0; i < poly_matrix_nvars(f); ++i) {
      if (!(trace(adj * partial_derivative(f, i)) == det.partial_derivative(i))) {
        cx["variable"] = i + 1;
        return false;
      }
    }
    return true;
  };
  std::vector<CheckLine> out;
  out.push_back(tuple_line(
      s, "tr(adj(f) df/dz_i) = d det f/dz_i on pencils", o, 9, 10, any_shape,
      [](SplitMix64& rng, std::size_t t) { return random_tuple(rng, 3, 1 + t % 4); },
      [&](const MatrixTuple& a, SplitMix64&, Json& cx) { return check_f(pencil(a), cx); }));
  out.push_back(plain_line(s, "tr(adj(f) df/dz_i) = d det f/dz_i on quadratic matrices", o, 10, 10,
                           [&](SplitMix64& rng, std::size_t t, Json& cx) {
                             PolyMatrix f = random_quadratic_matrix(rng, 1 + t % 4, 2);
                             cx["f"] = poly_matrix_to_json(f);
                             return check_f(f, cx);
                           }));
  return out;
}

std::vector<CheckLine> parity(const SuiteOptions& o) {
  const std::string s = "parity";
  auto n_at_least_4 = [](const MatrixTuple& t) { return need_n(t, 4, 8); };
  auto gen = [](SplitMix64& rng, std::size_t t) { return random_regular_tuple(rng, 4, 2 + t % 2); };
  std::vector<CheckLine> out;
  for (int m : {2, 4}) {
    out.push_back(tuple_line(s, "tr(omega^" + std::to_string(m) + ") = 0", o, 10 + m, 4, n_at_least_4, gen,
                             [m](const MatrixTuple& a, SplitMix64&, Json& cx) {
                               return form_zero(trace_power_form(pencil(a), m, Cochain::trace_word(m, a.size())), cx);
                             }));
  }
  out.push_back(tuple_line(
      s, "anchored expansion equals the wedge power for m = 3", o, 15, 8, any_shape,
      [](SplitMix64& rng, std::size_t t) { return random_regular_tuple(rng, 3 + t % 2, 2 + (t / 2) % 2); },
      [](const MatrixTuple& a, SplitMix64& rng, Json& cx) {
        const PolyMatrix f = pencil(a);
        Cochain phi = a.size() == 2 && rng.coin(1, 2) ? cyclic_symmetrize(random_dense_cochain(rng, 3, 2))
                                                      : Cochain::trace_word(3, a.size());
        cx["cochain"] = cochain_to_json(phi);
        return identity_holds(
            compare_forms("anchored = wedge", trace_power_anchored(f, 3, phi), trace_power_wedge(f, 3, phi)), cx);
      }));
  return out;
}

// --- Jacobi suites ----------------------------------------------------------

std::vector<CheckLine> theorem33(const SuiteOptions& o) {
  const std::string s = "theorem33";
  std::vector<CheckLine> out;
  auto factor_ok = [](const PolyMatrix& f, Json& cx) {
    TopFormFactorization t = factorize_top_form(f, Cochain::trace_word(poly_matrix_nvars(f) - 1, f.rows()));
    if (!t.relations_hold) cx["relations"] = "fail";
    return form_zero(t.residual, cx, "residual") && t.relations_hold;
  };
  out.push_back(tuple_line(
      s, "top form is q s with zero residual on pencils", o, 20, 6,
      [](const MatrixTuple& t) { return t.count() % 2 == 0 && t.count() >= 4 ? std::string() : "needs even n >= 4"; },
      [](SplitMix64& rng, std::size_t t) { return random_regular_tuple(rng, 4, 2 + t % 2); },
      [&](const MatrixTuple& a, SplitMix64&, Json& cx) { return factor_ok(pencil(a), cx); }));
  out.push_back(plain_line(
      s, "top form is q s with zero residual on a quadratic matrix", o, 21, 1,
      [&](SplitMix64& rng, std::size_t, Json& cx) {
        PolyMatrix f = random_quadratic_matrix(rng, 2, 4);
        cx["f"] = poly_matrix_to_json(f);
        return factor_ok(f, cx);
      },
      true));
  out.push_back(tuple_line(
      s, "p is homogeneous of degree 2 for k = 3", o, 22, 20,
      [](const MatrixTuple& t) { return need_n(t, 4, 4) + need_k(t, 3); },
      [](SplitMix64& rng, std::size_t) { return random_regular_tuple(rng, 4, 3); },
      [](const MatrixTuple& a, SplitMix64&, Json& cx) {
        PencilCubicData d = theorem33_p(a);
        cx["p"] = to_string(d.p);
        return d.p_degree == 2 && homogeneity_degree(d.p) == 2;
      }));
  out.push_back(tuple_line(
      s, "cubic numerator / det = z4 p exactly", o, 23, 50,
      [](const MatrixTuple& t) { return need_n(t, 4, 4); },
      [](SplitMix64& rng, std::size_t t) { return random_regular_tuple(rng, 4, 2 + t % 2); },
      [](const MatrixTuple& a, SplitMix64&, Json& cx) {
        PencilCubicData d = theorem33_p(a);
        cx["p"] = to_string(d.p);
        cx["quotient"] = to_string(d.cubic_quotient);
        return d.quotient_matches_p && d.cubic_quotient * d.det == d.cubic_numerator;
      }));
  return out;
}

/// p on the matrix-unit pencil through the wedge oracle: the dz1 dz2 dz3
/// coefficient of tr(omega^3) over that of s, times det^2 / 3.
MultiPoly brute_force_unit_p() {
  const PolyMatrix f = pencil(matrix_unit_tuple());
  const ScalarForm top = kappa_wedge_oracle(Cochain::trace_word(3, 2), f);
  const std::vector<int> idx{0, 1, 2};
  const MultiIndex i123(idx);
  const RatFn q = top.coefficient(i123) * s_form(4).coefficient(i123).inverse();
  const MultiPoly det = determinant(f);
  RatFn p = (q * RatFn(det * det) * Gaussian(Rational(1, 3))).reduced();
  if (!p.is_polynomial()) throw std::domain_error("oracle p is not a polynomial");
  return p.num() * p.den().constant_term().inverse();
}

std::vector<CheckLine> example35(const SuiteOptions& o) {
  const std::string s = "example35";
  std::vector<CheckLine> out;
  std::optional<Gaussian> epsilon;
  LineBuilder calib(s, "epsilon calibrated on the matrix-unit tuple");
  calib.trial([&](Json& cx) {
    const MultiPoly oracle = brute_force_unit_p();
    const MultiPoly p = theorem33_p(matrix_unit_tuple()).p;
    const Gaussian c = example35_constant(matrix_unit_tuple());
    cx["oracle_p"] = to_string(oracle);
    cx["p"] = to_string(p);
    cx["constant"] = to_string(c);
    if (!(oracle == p) || !p.is_constant() || c.is_zero()) return false;
    const Gaussian e = p.constant_term() * c.inverse();
    if (!(e == Gaussian(1) || e == Gaussian(-1))) return false;
    epsilon = e;
    return true;
  });
  out.push_back(calib.finish(epsilon ? "epsilon = " + to_string(*epsilon) : "epsilon undetermined"));
  out.push_back(tuple_line(
      s, "p is the constant epsilon * closed form for k = 2", o, 30, 100,
      [](const MatrixTuple& t) { return need_n(t, 4, 4) + need_k(t, 2); },
      [](SplitMix64& rng, std::size_t) { return random_regular_tuple(rng, 4, 2); },
      [&](const MatrixTuple& a, SplitMix64&, Json& cx) {
        if (!epsilon) throw std::logic_error("epsilon was not calibrated");
        PencilCubicData d = theorem33_p(a);
        const Gaussian c = example35_constant(a);
        cx["p"] = to_string(d.p);
        cx["constant"] = to_string(c);
        return d.p.is_constant() && d.p == MultiPoly::constant(4, *epsilon * c);
      }));
  return out;
}

// --- invariant functionals --------------------------------------------------

std::vector<CheckLine> tau_suite(const SuiteOptions& o) {
  const std::string s = "tau";
  auto gen = [](SplitMix64& rng, std::size_t) { return random_regular_tuple(rng, 4, 2); };
  auto opts = [&o](std::size_t salt) {
    TauOptions t;
    t.seed = derive_seed(o.seed, 100 + salt);
    return t;
  };
  std::vector<CheckLine> out;
  out.push_back(tuple_line(s, "tau(F1 x F2) = tau(F1) ^ tau(F2)", o, 40, 4, any_shape, gen,
                           [&](const MatrixTuple& a, SplitMix64&, Json& cx) {
                             const std::size_t k = a.size();
                             const Cochain tr = Cochain::trace_word(1, k), tr3 = Cochain::trace_word(3, k);
                             const PolyMatrix f = pencil(a);
                             return identity_holds(tau_multiplicativity(tr, tr, f, opts(0)), cx) &&
                                    identity_holds(tau_multiplicativity(tr, tr3, f, opts(1)), cx);
                           }));
  out.push_back(tuple_line(s, "d tau(F) = 0", o, 41, 4, any_shape, gen,
                           [&](const MatrixTuple& a, SplitMix64&, Json& cx) {
                             const std::size_t k = a.size();
                             const Cochain tr = Cochain::trace_word(1, k), tr3 = Cochain::trace_word(3, k);
                             const PolyMatrix f = pencil(a);
                             return identity_holds(tau_closedness(tr, f, opts(2)), cx) &&
                                    identity_holds(tau_closedness(tr3, f, opts(3)), cx) &&
                                    identity_holds(tau_closedness(Cochain::product(tr, tr), f, opts(4)), cx);
                           }));
  return out;
}

MatrixTuple random_diagonal_tuple(SplitMix64& rng, std::size_t n, std::size_t k) {
  std::vector<ScalarMatrix> ms;
  for (std::size_t j = 0; j < n; ++j) {
    ScalarMatrix m(k, k, Gaussian());
    for (std::size_t i = 0; i < k; ++i) m(i, i) = Gaussian(rng.uniform(-3, 3));
    ms.push_back(std::move(m));
  }
  return MatrixTuple(k, std::move(ms));
}

std::string need_diagonal(const MatrixTuple& t) {
  for (const auto& m : t.matrices())
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (r != c && !m(r, c).is_zero()) return "needs diagonal matrices";
  return {};
}

std::vector<CheckLine> hyperplane(const SuiteOptions& o) {
  const std::string s = "hyperplane";
  auto gen = [](SplitMix64& rng, std::size_t t) { return random_diagonal_tuple(rng, 2 + t % 2, 3); };
  std::vector<CheckLine> out;
  out.push_back(tuple_line(s, "det is the product of the hyperplane forms", o, 50, 10, need_diagonal, gen,
                           [](const MatrixTuple& a, SplitMix64&, Json&) {
                             return hyperplane_decomposition(a).product_matches_det;
                           }));
  out.push_back(tuple_line(s, "kappa(coordinate functional) = d ell / ell", o, 51, 10, need_diagonal, gen,
                           [](const MatrixTuple& a, SplitMix64&, Json& cx) {
                             HyperplaneDecomposition h = hyperplane_decomposition(a);
                             for (std::size_t i = 0; i < h.log_derivative_matches.size(); ++i)
                               if (h.log_derivative_matches[i] == false) {
                                 cx["coordinate"] = i + 1;
                                 return false;
                               }
                             return h.product_tau_matches.value_or(true);
                           }));
  return out;
}

// --- torus ------------------------------------------------------------------

RootOfUnityElement random_coeff(SplitMix64& rng, int q) {
  std::vector<Gaussian> c(q);
  for (auto& g : c) g = rng.coin(1, 2) ? random_gaussian(rng) : Gaussian();
  return RootOfUnityElement(q, std::move(c));
}

ExactTorusElement random_exact(SplitMix64& rng, const TorusConfig& c) {
  ExactTorusElement x(c);
  for (int i = 0; i < 3; ++i) x.add_term(rng.uniform(-2, 2), rng.uniform(-2, 2), random_coeff(rng, c.q));
  return x;
}

std::vector<CheckLine> torus_algebra(const SuiteOptions& o) {
  const std::string s = "torus";
  auto cfg = [](std::size_t t) { return TorusConfig::exact(3 + static_cast<int>(t % 3), 1); };
  auto triple = [&](SplitMix64& rng, std::size_t t, Json& cx) {
    const TorusConfig c = cfg(t);
    std::vector<ExactTorusElement> x{random_exact(rng, c), random_exact(rng, c), random_exact(rng, c)};
    cx["config"] = torus_config_to_json(c);
    cx["elements"] = Json::array({to_string(x[0]), to_string(x[1]), to_string(x[2])});
    return x;
  };
  std::vector<CheckLine> out;
  out.push_back(plain_line(s, "associativity", o, 60, 30, [&](SplitMix64& rng, std::size_t t, Json& cx) {
    auto x = triple(rng, t, cx);
    return torus_mul(torus_mul(x[0], x[1]), x[2]) == torus_mul(x[0], torus_mul(x[1], x[2]));
  }));
  out.push_back(plain_line(s, "tr(xy) = tr(yx)", o, 61, 30, [&](SplitMix64& rng, std::size_t t, Json& cx) {
    auto x = triple(rng, t, cx);
    return torus_trace(torus_mul(x[0], x[1])) == torus_trace(torus_mul(x[1], x[0]));
  }));
  out.push_back(plain_line(s, "Leibniz rule for delta1 and delta2", o, 62, 30,
                           [&](SplitMix64& rng, std::size_t t, Json& cx) {
                             auto x = triple(rng, t, cx);
                             for (Derivation d : {Derivation::delta1, Derivation::delta2}) {
                               const ExactTorusElement lhs = derivation(torus_mul(x[0], x[1]), d);
                               const ExactTorusElement rhs =
                                   torus_mul(derivation(x[0], d), x[1]) + torus_mul(x[0], derivation(x[1], d));
                               if (!(lhs == rhs)) return false;
                             }
                             return true;
                           }));
  return out;
}

std::vector<CheckLine> torus_cocycles(const std::vector<TorusConfig>& configs) {
  std::vector<CheckLine> out;
  for (TorusCocycle which : {TorusCocycle::phi1, TorusCocycle::phi2, TorusCocycle::psi1, TorusCocycle::psi2}) {
    LineBuilder line("torus", to_string(which) + " is cyclic with b = 0 on monomials |m|,|n| <= 3");
    std::size_t cyc = 0, cob = 0;
    for (const TorusConfig& c : configs) {
      line.trial([&](Json& cx) {
        cx["config"] = torus_config_to_json(c);
        CocycleReport r = cocycle_check(which, c, 3);
        cyc += r.cyclic_tuples;
        cob += r.coboundary_tuples;
        if (r.counterexample) cx["arguments"] = *r.counterexample;
        return r.holds();
      });
    }
    out.push_back(line.finish(std::to_string(cyc) + " cyclic tuples, " + std::to_string(cob) + " coboundary tuples"));
  }
  return out;
}

CheckLine torus_factorization(const SuiteOptions& o, double theta) {
  const TorusConfig c = TorusConfig::numeric(theta);
  const NumericTorusElement one = NumericTorusElement::one(c);
  // With only nonnegative exponents every q_j vanishes; the inverse terms
  // make the check nontrivial.
  auto mono = [&c](long m, long n, double x) { return NumericTorusElement::monomial(c, m, n, C(x)); };
  const std::vector<NumericTorusElement> a{one, mono(1, 0, 1) + mono(0, -1, 0.5), mono(0, 1, 1) + mono(-1, 0, 0.5)};
  std::vector<std::vector<C>> samples{{C(1), C(0.1), C(0.1)}};
  SplitMix64 rng(derive_seed(o.seed, 70));
  const std::size_t extra = trial_count(o, 10);
  for (std::size_t t = 0; t < extra; ++t)
    samples.push_back({C(1, rng.uniform(-3, 3) / 10.0), C(rng.uniform(-10, 10) / 80.0, rng.uniform(-10, 10) / 80.0),
                       C(rng.uniform(1, 10) / 80.0, rng.uniform(-10, 10) / 80.0)});
  LineBuilder line("torus", "kappa(phi_j) = q_j s via truncated resolvents, M = 40");
  std::string detail;
  line.trial([&](Json& cx) {
    FactorizationReport r = example36_factorization(a, samples, 40, o.tol);
    std::size_t used = 0;
    double max_q = 0;
    for (const auto& sm : r.samples) {
      if (sm.skipped) continue;
      ++used;
      max_q = std::max({max_q, std::abs(sm.q1), std::abs(sm.q2)});
    }
    detail = std::to_string(used) + " samples, max |q_j| " + format_double(max_q) + ", max residual " +
             format_double(r.max_residual) + ", max bound " + format_double(r.max_bound) + ", tol " +
             format_double(r.tol);
    for (const auto& w : r.warnings) detail += "; warning: " + w;
    cx["config"] = torus_config_to_json(c);
    if (!r.passed) {
      for (const auto& sm : r.samples) {
        if (sm.skipped) continue;
        bool bad = false;
        for (std::size_t i = 0; i < sm.residuals.size(); ++i)
          bad |= sm.residuals[i] > sm.bounds[i] || sm.residuals[i] > o.tol || sm.bounds[i] > o.tol;
        if (!bad) continue;
        Json z = Json::array();
        for (const C& zi : sm.z) z.push_back(Json::array({format_double(zi.real()), format_double(zi.imag())}));
        Json res = Json::array(), bnd = Json::array();
        for (double x : sm.residuals) res.push_back(format_double(x));
        for (double x : sm.bounds) bnd.push_back(format_double(x));
        cx["z"] = z;
        cx["residuals"] = res;
        cx["bounds"] = bnd;
        break;
      }
    }
    if (max_q == 0) cx["error"] = "q_j vanishes at every sample";
    return r.passed && used >= 10 && max_q > 0;
  });
  return line.finish(detail);
}

const double kDefaultTheta = (std::sqrt(5.0) - 1) / 2;

std::vector<TorusConfig> default_exact_configs() {
  return {TorusConfig::exact(3, 1), TorusConfig::exact(4, 1), TorusConfig::exact(5, 2)};
}

std::vector<CheckLine> torus_suite(const SuiteOptions& o) {
  std::vector<CheckLine> out = torus_algebra(o);
  for (auto& l : torus_cocycles(default_exact_configs())) out.push_back(std::move(l));
  out.push_back(torus_factorization(o, kDefaultTheta));
  return out;
}

}  // namespace

bool SuiteReport::passed() const {
  for (const auto& l : lines)
    if (!l.passed) return false;
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"flatness", "theorem29", "jacobi-classic", "parity",
                                              "theorem33", "example35", "tau", "hyperplane", "torus"};
  return names;
}

bool is_suite_name(const std::string& name) {
  if (name == "all") return true;
  for (const auto& n : suite_names())
    if (n == name) return true;
  return false;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  SuiteReport report;
  auto add = [&](std::vector<CheckLine> lines) {
    for (auto& l : lines) report.lines.push_back(std::move(l));
  };
  if (name == "all") {
    for (const auto& n : suite_names()) add(run_suite(n, options).lines);
    return report;
  }
  if (name == "flatness") add(flatness(options));
  else if (name == "theorem29") add(theorem29(options));
  else if (name == "jacobi-classic") add(jacobi_classic(options));
  else if (name == "parity") add(parity(options));
  else if (name == "theorem33") add(theorem33(options));
  else if (name == "example35") add(example35(options));
  else if (name == "tau") add(tau_suite(options));
  else if (name == "hyperplane") add(hyperplane(options));
  else if (name == "torus") add(torus_suite(options));
  else throw std::invalid_argument("unknown suite '" + name + "'");
  return report;
}

SuiteReport run_torus_check(const std::string& which, const SuiteOptions& options,
                            const std::optional<TorusConfig>& config) {
  SuiteReport report;
  if (which == "cocycles") {
    if (config && config->mode != TorusConfig::Mode::exact)
      throw std::invalid_argument("cocycle checks need an exact torus configuration");
    report.lines = torus_cocycles(config ? std::vector<TorusConfig>{*config} : default_exact_configs());
  } else if (which == "factorization") {
    double theta = kDefaultTheta;
    if (config) theta = config->mode == TorusConfig::Mode::numeric ? config->theta
                                                                   : static_cast<double>(config->p_prime) / config->q;
    report.lines.push_back(torus_factorization(options, theta));
  } else {
    throw std::invalid_argument("unknown torus check '" + which + "'");
  }
  return report;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

std::string render_text(const SuiteReport& report) {
  std::string out;
  std::size_t failed = 0, skipped = 0;
  for (const auto& l : report.lines) {
    const char* status = l.skipped ? "SKIP" : l.passed ? "PASS" : "FAIL";
    failed += !l.passed;
    skipped += l.skipped;
    out += std::string(status) + "  " + l.suite + ": " + l.name + " (" + l.detail + ")\n";
    if (l.counterexample) out += "      counterexample: " + l.counterexample->dump() + "\n";
  }
  out += "summary: " + std::to_string(report.lines.size()) + " checks, " + std::to_string(failed) + " failed, " +
         std::to_string(skipped) + " skipped\n";
  return out;
}

Json render_json(const SuiteReport& report) {
  Json checks = Json::array();
  for (const auto& l : report.lines) {
    Json c;
    c["suite"] = l.suite;
    c["name"] = l.name;
    c["status"] = l.skipped ? "SKIP" : l.passed ? "PASS" : "FAIL";
    c["trials"] = l.trials;
    c["detail"] = l.detail;
    if (l.counterexample) c["counterexample"] = *l.counterexample;
    checks.push_back(std::move(c));
  }
  Json out;
  out["passed"] = report.passed();
  out["checks"] = std::move(checks);
  return out;
}

MatrixTuple matrix_unit_tuple() {
  return MatrixTuple(2, {matrix_unit(2, 0, 0), matrix_unit(2, 0, 1), matrix_unit(2, 1, 0), matrix_unit(2, 1, 1)});
}

}  // namespace pspec
