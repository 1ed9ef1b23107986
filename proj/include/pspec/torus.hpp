#pragma once

// Finitely supported elements sum a_{m,n} U^m V^n of the noncommutative
// torus with UV = lambda VU, so (U^a V^b)(U^c V^d) = lambda^(-bc) U^(a+c) V^(b+d).
// Exact mode: coefficients in Q(i)[t]/(t^q - 1) with lambda = t^p'.
// Numeric mode: complex doubles with lambda = exp(2 pi i theta).

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pspec/cochain.hpp"
#include "pspec/scalar.hpp"

namespace pspec {

struct TorusConfig {
  enum class Mode { exact, numeric };
  Mode mode = Mode::exact;
  int q = 1;
  int p_prime = 0;
  double theta = 1.0;

  /// Throws unless q >= 1.
  static TorusConfig exact(int q, int p_prime);
  /// Throws unless 0 < theta <= 1.
  static TorusConfig numeric(double theta);
  friend bool operator==(const TorusConfig&, const TorusConfig&) = default;
};

template <class Coeff>
struct TorusRing;

template <>
struct TorusRing<RootOfUnityElement> {
  static constexpr TorusConfig::Mode mode = TorusConfig::Mode::exact;
  static RootOfUnityElement zero(const TorusConfig& c) { return RootOfUnityElement(c.q); }
  static RootOfUnityElement from_gaussian(const TorusConfig& c, const Gaussian& g) {
    return RootOfUnityElement::constant(c.q, g);
  }
  static RootOfUnityElement lambda_power(const TorusConfig& c, long e) {
    return RootOfUnityElement::t_power(c.q, static_cast<long>(c.p_prime) * e);
  }
  /// x lambda^e as a rotation of the coefficients of t.
  static RootOfUnityElement twist(const RootOfUnityElement& x, const TorusConfig& c, long e) {
    const long q = c.q;
    const long shift = ((static_cast<long>(c.p_prime) * e) % q + q) % q;
    std::vector<Gaussian> out(q);
    for (long i = 0; i < q; ++i) out[(i + shift) % q] = x[static_cast<int>(i)];
    return RootOfUnityElement(c.q, std::move(out));
  }
  static RootOfUnityElement times_integer(RootOfUnityElement x, long m) { return x *= Gaussian(m); }
  static bool is_zero(const RootOfUnityElement& x) { return x.is_zero(); }
};

template <>
struct TorusRing<std::complex<double>> {
  static constexpr TorusConfig::Mode mode = TorusConfig::Mode::numeric;
  static std::complex<double> zero(const TorusConfig&) { return 0.0; }
  static std::complex<double> from_gaussian(const TorusConfig&, const Gaussian& g) { return g.to_complex(); }
  static std::complex<double> lambda_power(const TorusConfig& c, long e) {
    return std::polar(1.0, 2.0 * std::numbers::pi * c.theta * static_cast<double>(e));
  }
  static std::complex<double> twist(const std::complex<double>& x, const TorusConfig& c, long e) {
    return x * lambda_power(c, e);
  }
  static std::complex<double> times_integer(std::complex<double> x, long m) { return x * static_cast<double>(m); }
  static bool is_zero(const std::complex<double>& x) { return x == 0.0; }
};

template <class Coeff>
class TorusElement {
 public:
  using Ring = TorusRing<Coeff>;
  using Key = std::pair<long, long>;

  explicit TorusElement(TorusConfig config) : config_(config) {
    if (config_.mode != Ring::mode) throw std::invalid_argument("torus configuration mode does not match coefficients");
  }
  static TorusElement monomial(const TorusConfig& config, long m, long n, Coeff c) {
    TorusElement x(config);
    x.add_term(m, n, std::move(c));
    return x;
  }
  static TorusElement monomial(const TorusConfig& config, long m, long n) {
    return monomial(config, m, n, Ring::from_gaussian(config, Gaussian(1)));
  }
  static TorusElement one(const TorusConfig& config) { return monomial(config, 0, 0); }
  static TorusElement scalar(const TorusConfig& config, Coeff c) { return monomial(config, 0, 0, std::move(c)); }

  const TorusConfig& config() const { return config_; }
  /// Keys (m, n) with nonzero coefficient, lexicographic.
  const std::map<Key, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(long m, long n) const {
    auto it = terms_.find({m, n});
    return it == terms_.end() ? Ring::zero(config_) : it->second;
  }

  void add_term(long m, long n, const Coeff& c) {
    if (Ring::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(Key{m, n}, c);
    if (inserted) return;
    it->second += c;
    if (Ring::is_zero(it->second)) terms_.erase(it);
  }

  TorusElement& operator+=(const TorusElement& o) {
    check(o);
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
  }
  TorusElement& operator-=(const TorusElement& o) { return *this += -o; }
  TorusElement operator-() const {
    TorusElement out(config_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
  }
  TorusElement& operator*=(const Coeff& c) {
    TorusElement out(config_);
    for (const auto& [k, v] : terms_) out.add_term(k.first, k.second, v * c);
    return *this = std::move(out);
  }
  friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
  friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
  friend TorusElement operator*(TorusElement a, const Coeff& c) { return a *= c; }
  friend bool operator==(const TorusElement& a, const TorusElement& b) {
    return a.config_ == b.config_ && a.terms_ == b.terms_;
  }

  void check(const TorusElement& o) const {
    if (!(config_ == o.config_)) throw std::invalid_argument("torus configurations differ");
  }

 private:
  TorusConfig config_;
  std::map<Key, Coeff> terms_;
};

using ExactTorusElement = TorusElement<RootOfUnityElement>;
using NumericTorusElement = TorusElement<std::complex<double>>;

template <class Coeff>
TorusElement<Coeff> torus_mul(const TorusElement<Coeff>& x, const TorusElement<Coeff>& y) {
  using Ring = TorusRing<Coeff>;
  x.check(y);
  TorusElement<Coeff> out(x.config());
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      Coeff c = cx * cy;
      const long twist = kx.second * ky.first;
      if (twist != 0) c = Ring::twist(c, x.config(), -twist);
      out.add_term(kx.first + ky.first, kx.second + ky.second, c);
    }
  return out;
}

/// The (0,0) coefficient.
template <class Coeff>
Coeff torus_trace(const TorusElement<Coeff>& x) {
  return x.coefficient(0, 0);
}

/// tr(xy) from the pairs (a,b), (-a,-b) only: sum x_{a,b} y_{-a,-b} lambda^(ab).
template <class Coeff>
Coeff torus_trace_product(const TorusElement<Coeff>& x, const TorusElement<Coeff>& y) {
  using Ring = TorusRing<Coeff>;
  x.check(y);
  Coeff acc = Ring::zero(x.config());
  for (const auto& [k, c] : x.terms()) {
    auto it = y.terms().find({-k.first, -k.second});
    if (it == y.terms().end()) continue;
    Coeff term = c * it->second;
    const long twist = k.second * k.first;
    if (twist != 0) term = Ring::twist(term, x.config(), twist);
    acc += term;
  }
  return acc;
}

enum class Derivation { delta1, delta2 };

/// delta1 scales U^m V^n by m, delta2 by n.
template <class Coeff>
TorusElement<Coeff> derivation(const TorusElement<Coeff>& x, Derivation which) {
  TorusElement<Coeff> out(x.config());
  for (const auto& [k, c] : x.terms())
    out.add_term(k.first, k.second,
                 TorusRing<Coeff>::times_integer(c, which == Derivation::delta1 ? k.first : k.second));
  return out;
}

/// Sum of coefficient moduli.
double l1_norm(const NumericTorusElement& x);

enum class TorusCocycle { phi1, phi2, psi1, psi2 };

int cocycle_arity(TorusCocycle which);
std::string to_string(TorusCocycle which);

/// phi_j(x0, x1) = tr(x0 delta_j x1); psi1 = tr(x0 x1 x2);
/// psi2 = tr(x0 (delta1 x1 delta2 x2 - delta2 x1 delta1 x2)).
/// Throws std::invalid_argument on an arity mismatch.
template <class Coeff>
Coeff torus_cocycle(TorusCocycle which, const std::vector<TorusElement<Coeff>>& args) {
  if (static_cast<int>(args.size()) != cocycle_arity(which))
    throw std::invalid_argument(to_string(which) + " takes " + std::to_string(cocycle_arity(which)) + " arguments");
  switch (which) {
    case TorusCocycle::phi1:
      return torus_trace_product(args[0], derivation(args[1], Derivation::delta1));
    case TorusCocycle::phi2:
      return torus_trace_product(args[0], derivation(args[1], Derivation::delta2));
    case TorusCocycle::psi1:
      return torus_trace_product(torus_mul(args[0], args[1]), args[2]);
    case TorusCocycle::psi2: {
      const auto d1a = derivation(args[1], Derivation::delta1), d2a = derivation(args[1], Derivation::delta2);
      const auto d1b = derivation(args[2], Derivation::delta1), d2b = derivation(args[2], Derivation::delta2);
      return torus_trace_product(args[0], torus_mul(d1a, d2b) - torus_mul(d2a, d1b));
    }
  }
  throw std::logic_error("unknown torus cocycle");
}

/// (b c)(x_0..x_a) with the algebra product torus_mul.
template <class Coeff>
Coeff torus_coboundary(TorusCocycle which, const std::vector<TorusElement<Coeff>>& args) {
  auto phi = [which](const std::vector<TorusElement<Coeff>>& x) { return torus_cocycle(which, x); };
  auto mul = [](const TorusElement<Coeff>& a, const TorusElement<Coeff>& b) { return torus_mul(a, b); };
  return hochschild_coboundary<TorusElement<Coeff>>(phi, std::span<const TorusElement<Coeff>>(args), mul);
}

/// c(x_{a-1}, x_0, .., x_{a-2}) - (-1)^(a-1) c(x_0, .., x_{a-1}) for arity a.
template <class Coeff>
Coeff torus_cyclic_defect(TorusCocycle which, const std::vector<TorusElement<Coeff>>& args) {
  std::vector<TorusElement<Coeff>> rotated;
  rotated.push_back(args.back());
  rotated.insert(rotated.end(), args.begin(), args.end() - 1);
  Coeff plain = torus_cocycle(which, args);
  if (args.size() % 2 == 0) plain = -plain;
  return torus_cocycle(which, rotated) - plain;
}

struct CocycleReport {
  TorusCocycle which = TorusCocycle::phi1;
  /// Monomial tuples U^m V^n with |m|, |n| <= range and total grading zero.
  /// Tuples of nonzero total grading give zero on both sides of each check.
  std::size_t cyclic_tuples = 0;
  std::size_t coboundary_tuples = 0;
  bool cyclic = true;
  bool closed = true;
  /// First failing tuple, serialized.
  std::optional<std::string> counterexample;
  bool holds() const { return cyclic && closed; }
};

/// Exact-mode cyclicity and b = 0 on every grading-zero monomial tuple.
CocycleReport cocycle_check(TorusCocycle which, const TorusConfig& config, int range = 3);

// --- numeric resolvents -----------------------------------------------------

struct NeumannResult {
  NumericTorusElement inverse;
  /// ||z_2 A_2 + z_3 A_3||_1 / |z_1|.
  double rho = 0;
  /// rho^(M+1) / ((1 - rho) |z_1|).
  double tail_bound = 0;
  /// (-(z_2 A_2 + z_3 A_3) / z_1)^(M+1) = 1 - A(z) inverse.
  NumericTorusElement remainder;
};

/// z_1^-1 sum_{t=0}^{M} (-(z_2 A_2 + z_3 A_3) / z_1)^t. Requires A_1 = 1 and
/// M >= 1; throws std::domain_error("Neumann series divergent at this
/// point") when rho >= 1.
NeumannResult neumann_resolvent(const std::vector<NumericTorusElement>& a, const std::vector<std::complex<double>>& z,
                                int order);

struct FactorizationSample {
  std::vector<std::complex<double>> z;
  bool skipped = false;
  /// q_j = 2 phi_j(W_1, W_2) / z_3.
  std::complex<double> q1, q2;
  /// |z1 phi_j(W1,W2) - z3 phi_j(W2,W3)| and |z2 phi_j(W1,W2) + z3 phi_j(W1,W3)|
  /// for j = 1, 2.
  std::vector<double> residuals;
  /// Tail of the truncated series pushed through phi_j, plus a rounding
  /// allowance; each residual must stay below it.
  std::vector<double> bounds;
};

struct FactorizationReport {
  std::vector<FactorizationSample> samples;
  std::vector<std::string> warnings;
  double max_residual = 0;
  double max_bound = 0;
  double tol = 0;
  /// Every residual <= its bound and <= tol, and every bound <= tol.
  bool passed = false;
};

/// Throws std::domain_error when every sample is divergent.
FactorizationReport example36_factorization(const std::vector<NumericTorusElement>& a,
                                            const std::vector<std::vector<std::complex<double>>>& samples, int order,
                                            double tol);

// --- text -------------------------------------------------------------------

/// Terms "(c)*U^m*V^n", lexicographic in (m, n); "0" for the zero element.
std::string to_string(const ExactTorusElement& x);
std::string to_string(const NumericTorusElement& x);
/// Accepts sums and products of numbers, i, t (exact mode), U, V and
/// parenthesized subexpressions with integer exponents; products use
/// torus_mul. Throws std::invalid_argument with the offending offset.
ExactTorusElement parse_exact_torus(std::string_view text, const TorusConfig& config);
NumericTorusElement parse_numeric_torus(std::string_view text, const TorusConfig& config);

}  // namespace pspec
