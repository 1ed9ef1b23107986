#include "pspec/torus.hpp"

#include <cctype>
#include <cfloat>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace pspec {

TorusConfig TorusConfig::exact(int q, int p_prime) {
  if (q < 1) throw std::invalid_argument("torus root-of-unity order q must be >= 1");
  TorusConfig c;
  c.mode = Mode::exact;
  c.q = q;
  c.p_prime = p_prime;
  return c;
}

TorusConfig TorusConfig::numeric(double theta) {
  if (!(theta > 0 && theta <= 1)) throw std::invalid_argument("torus theta must lie in (0, 1]");
  TorusConfig c;
  c.mode = Mode::numeric;
  c.q = 1;
  c.theta = theta;
  return c;
}

double l1_norm(const NumericTorusElement& x) {
  double s = 0;
  for (const auto& [k, c] : x.terms()) s += std::abs(c);
  return s;
}

int cocycle_arity(TorusCocycle which) {
  return which == TorusCocycle::phi1 || which == TorusCocycle::phi2 ? 2 : 3;
}

std::string to_string(TorusCocycle which) {
  switch (which) {
    case TorusCocycle::phi1:
      return "phi1";
    case TorusCocycle::phi2:
      return "phi2";
    case TorusCocycle::psi1:
      return "psi1";
    case TorusCocycle::psi2:
      return "psi2";
  }
  return "?";
}

namespace {

using Monomial2 = std::pair<long, long>;

std::string describe_tuple(const std::vector<Monomial2>& t) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < t.size(); ++i)
    out << (i ? ", " : "") << "U^" << t[i].first << "*V^" << t[i].second;
  out << ')';
  return out.str();
}

// Calls visit on every tuple of `arity` monomials in the box with total
// grading zero.
template <class Visit>
void for_each_balanced_tuple(int arity, int range, const Visit& visit) {
  std::vector<Monomial2> tuple(arity);
  auto recurse = [&](auto& self, int slot, long sm, long sn) -> void {
    if (slot == arity - 1) {
      if (std::labs(sm) > range || std::labs(sn) > range) return;
      tuple[slot] = {-sm, -sn};
      visit(tuple);
      return;
    }
    for (long m = -range; m <= range; ++m)
      for (long n = -range; n <= range; ++n) {
        tuple[slot] = {m, n};
        self(self, slot + 1, sm + m, sn + n);
      }
  };
  recurse(recurse, 0, 0, 0);
}

}  // namespace

CocycleReport cocycle_check(TorusCocycle which, const TorusConfig& config, int range) {
  if (config.mode != TorusConfig::Mode::exact) throw std::invalid_argument("cocycle_check runs in exact mode");
  CocycleReport report;
  report.which = which;
  const int a = cocycle_arity(which);
  auto elements = [&](const std::vector<Monomial2>& t) {
    std::vector<ExactTorusElement> x;
    for (const auto& [m, n] : t) x.push_back(ExactTorusElement::monomial(config, m, n));
    return x;
  };
  for_each_balanced_tuple(a, range, [&](const std::vector<Monomial2>& t) {
    ++report.cyclic_tuples;
    if (!torus_cyclic_defect(which, elements(t)).is_zero() && report.cyclic) {
      report.cyclic = false;
      if (!report.counterexample) report.counterexample = "cyclicity fails at " + describe_tuple(t);
    }
  });
  for_each_balanced_tuple(a + 1, range, [&](const std::vector<Monomial2>& t) {
    ++report.coboundary_tuples;
    if (!torus_coboundary(which, elements(t)).is_zero() && report.closed) {
      report.closed = false;
      if (!report.counterexample) report.counterexample = "b != 0 at " + describe_tuple(t);
    }
  });
  return report;
}

NeumannResult neumann_resolvent(const std::vector<NumericTorusElement>& a, const std::vector<std::complex<double>>& z,
                                int order) {
  if (a.size() != 3 || z.size() != 3) throw std::invalid_argument("Neumann resolvent needs a 3-tuple and a 3-point");
  const TorusConfig& config = a[0].config();
  if (!(a[0] == NumericTorusElement::one(config))) throw std::invalid_argument("Neumann resolvent needs A_1 = 1");
  if (order < 1) throw std::invalid_argument("Neumann resolvent needs order M >= 1");
  if (z[0] == 0.0) throw std::domain_error("Neumann series divergent at this point");
  NumericTorusElement x = a[1] * z[1] + a[2] * z[2];
  NeumannResult out{NumericTorusElement(config), 0, 0, NumericTorusElement(config)};
  out.rho = l1_norm(x) / std::abs(z[0]);
  if (out.rho >= 1) throw std::domain_error("Neumann series divergent at this point");
  const NumericTorusElement y = x * (-1.0 / z[0]);
  NumericTorusElement power = NumericTorusElement::one(config);
  NumericTorusElement sum = power;
  for (int t = 1; t <= order; ++t) {
    power = torus_mul(power, y);
    sum += power;
  }
  out.remainder = torus_mul(power, y);
  out.inverse = sum * (1.0 / z[0]);
  out.tail_bound = std::pow(out.rho, order + 1) / ((1 - out.rho) * std::abs(z[0]));
  return out;
}

FactorizationReport example36_factorization(const std::vector<NumericTorusElement>& a,
                                            const std::vector<std::vector<std::complex<double>>>& samples, int order,
                                            double tol) {
  FactorizationReport report;
  report.tol = tol;
  report.passed = true;
  std::size_t usable = 0;
  const double rounding = 8.0 * (order + 2) * DBL_EPSILON;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    FactorizationSample sample;
    sample.z = samples[s];
    std::optional<NeumannResult> resolvent;
    try {
      resolvent = neumann_resolvent(a, sample.z, order);
    } catch (const std::domain_error& e) {
      sample.skipped = true;
      report.warnings.push_back("sample " + std::to_string(s + 1) + " skipped: " + e.what());
      report.samples.push_back(std::move(sample));
      continue;
    }
    ++usable;
    const NeumannResult& r = *resolvent;
    const auto& z = sample.z;
    std::vector<NumericTorusElement> w;
    for (const auto& ai : a) w.push_back(torus_mul(r.inverse, ai));
    // sum z_i W_i = 1 - T with T the series remainder, so the two residuals
    // are phi_j(T, W_2) and phi_j(W_1, T) in modulus.
    const double t_norm = l1_norm(r.remainder);
    for (Derivation d : {Derivation::delta1, Derivation::delta2}) {
      const TorusCocycle phi = d == Derivation::delta1 ? TorusCocycle::phi1 : TorusCocycle::phi2;
      const auto f12 = torus_cocycle<std::complex<double>>(phi, {w[0], w[1]});
      const auto f23 = torus_cocycle<std::complex<double>>(phi, {w[1], w[2]});
      const auto f13 = torus_cocycle<std::complex<double>>(phi, {w[0], w[2]});
      const double dw2 = l1_norm(derivation(w[1], d)), dw3 = l1_norm(derivation(w[2], d));
      const double n1 = l1_norm(w[0]), n2 = l1_norm(w[1]);
      const double dt = l1_norm(derivation(r.remainder, d));
      sample.residuals.push_back(std::abs(z[0] * f12 - z[2] * f23));
      sample.bounds.push_back(t_norm * dw2 + rounding * (std::abs(z[0]) * n1 * dw2 + std::abs(z[2]) * n2 * dw3));
      sample.residuals.push_back(std::abs(z[1] * f12 + z[2] * f13));
      sample.bounds.push_back(n1 * dt + rounding * n1 * (std::abs(z[1]) * dw2 + std::abs(z[2]) * dw3));
      const std::complex<double> q = 2.0 * f12 / z[2];
      (d == Derivation::delta1 ? sample.q1 : sample.q2) = q;
    }
    for (std::size_t i = 0; i < sample.residuals.size(); ++i) {
      report.max_residual = std::max(report.max_residual, sample.residuals[i]);
      report.max_bound = std::max(report.max_bound, sample.bounds[i]);
      if (sample.residuals[i] > sample.bounds[i] || sample.residuals[i] > tol || sample.bounds[i] > tol)
        report.passed = false;
    }
    report.samples.push_back(std::move(sample));
  }
  if (usable == 0) throw std::domain_error("every sample point is outside the Neumann convergence region");
  return report;
}

// ---------------------------------------------------------------------------
// Text.

namespace {

std::string monomial_suffix(long m, long n) {
  std::string s;
  if (m != 0) s += m == 1 ? "*U" : "*U^" + std::to_string(m);
  if (n != 0) s += n == 1 ? "*V" : "*V^" + std::to_string(n);
  return s;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class Coeff, class Format>
std::string join_terms(const TorusElement<Coeff>& x, const Format& format) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + format(c) + ")" + monomial_suffix(k.first, k.second);
  }
  return out;
}

template <class Coeff>
class TorusParser {
 public:
  using Elem = TorusElement<Coeff>;
  using Ring = TorusRing<Coeff>;
  TorusParser(std::string_view text, const TorusConfig& config) : text_(text), config_(config) {}

  Elem parse() {
    Elem e = expression();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("torus element parse error at offset " + std::to_string(pos_) + ": " + what +
                                " in '" + std::string(text_) + "'");
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Elem expression() {
    bool negative = false;
    if (accept('-'))
      negative = true;
    else
      accept('+');
    Elem acc = term();
    if (negative) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Elem term() {
    Elem acc = factor();
    while (accept('*')) acc = torus_mul(acc, factor());
    return acc;
  }

  long exponent() {
    skip();
    bool negative = accept('-');
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    const long e = std::stol(std::string(text_.substr(start, pos_ - start)));
    return negative ? -e : e;
  }

  Elem factor() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == 'U' || c == 'V') {
      ++pos_;
      const long e = accept('^') ? exponent() : 1;
      return c == 'U' ? Elem::monomial(config_, e, 0) : Elem::monomial(config_, 0, e);
    }
    if (c == 't') {
      if constexpr (Ring::mode == TorusConfig::Mode::exact) {
        ++pos_;
        const long e = accept('^') ? exponent() : 1;
        return Elem::scalar(config_, RootOfUnityElement::t_power(config_.q, e));
      } else {
        fail("t is only available in exact mode");
      }
    }
    Elem base = atom();
    if (!accept('^')) return base;
    const long e = exponent();
    if (e < 0) fail("negative exponent on a non-monomial factor");
    Elem out = Elem::one(config_);
    for (long i = 0; i < e; ++i) out = torus_mul(out, base);
    return out;
  }

  Elem atom() {
    skip();
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Elem e = expression();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (c == 'i') {
      ++pos_;
      return Elem::scalar(config_, Ring::from_gaussian(config_, Gaussian::i()));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    fail("unexpected character");
  }

  Elem number() {
    const std::size_t start = pos_;
    if constexpr (Ring::mode == TorusConfig::Mode::exact) {
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
        ++pos_;
      try {
        return Elem::scalar(config_, Ring::from_gaussian(config_, Gaussian(parse_rational(text_.substr(start, pos_ - start)))));
      } catch (const std::invalid_argument&) {
        pos_ = start;
        fail("malformed rational");
      }
    } else {
      const std::string rest(text_.substr(start));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - rest.c_str());
      return Elem::scalar(config_, std::complex<double>(v, 0));
    }
  }

  std::string_view text_;
  TorusConfig config_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const ExactTorusElement& x) {
  return join_terms(x, [](const RootOfUnityElement& c) { return to_string(c); });
}

std::string to_string(const NumericTorusElement& x) {
  return join_terms(x, [](const std::complex<double>& c) {
    std::string im = format_double(std::abs(c.imag()));
    return format_double(c.real()) + (std::signbit(c.imag()) ? "-" : "+") + im + "*i";
  });
}

ExactTorusElement parse_exact_torus(std::string_view text, const TorusConfig& config) {
  return TorusParser<RootOfUnityElement>(text, config).parse();
}

NumericTorusElement parse_numeric_torus(std::string_view text, const TorusConfig& config) {
  return TorusParser<std::complex<double>>(text, config).parse();
}

}  // namespace pspec
