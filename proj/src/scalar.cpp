#include "pspec/scalar.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pspec {

Gaussian::Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Gaussian Gaussian::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(i)");
  Rational n = norm();
  return Gaussian(re_ / n, -im_ / n);
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string to_string(const Gaussian& g) {
  if (g.is_real()) return g.re().get_str();
  std::string im_part;
  Rational mag = abs(g.im());
  im_part = mag.get_str() + "*i";
  if (sgn(g.re()) == 0) return (sgn(g.im()) < 0 ? "-" : "") + im_part;
  return g.re().get_str() + (sgn(g.im()) < 0 ? "-" : "+") + im_part;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad_scalar(std::string_view text, const char* why) {
  throw std::invalid_argument("malformed scalar '" + std::string(text) + "': " + why);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) bad_scalar(text, "expected [sign]digits[/digits]");
  mpz_class n(std::string(num), 10), d(std::string(den), 10);
  if (d == 0) bad_scalar(text, "zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

Gaussian parse_gaussian(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad_scalar(text, "empty");
  if (s.back() != 'i') return Gaussian(parse_rational(s));

  // Imaginary part starts at the last sign that is not the leading one.
  std::size_t split = 0;
  for (std::size_t p = s.size(); p-- > 1;) {
    if (s[p] == '+' || s[p] == '-') {
      split = p;
      break;
    }
  }
  std::string_view re_part = s.substr(0, split);
  std::string_view im_part = s.substr(split);
  im_part.remove_suffix(1);  // 'i'
  if (!im_part.empty() && im_part.back() == '*') im_part.remove_suffix(1);
  Rational im;
  if (im_part.empty() || im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    im = parse_rational(im_part);
  }
  Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
  return Gaussian(re, im);
}

// ---------------------------------------------------------------------------

RootOfUnityElement::RootOfUnityElement(int order) {
  if (order < 1) throw std::invalid_argument("root-of-unity ring needs order q >= 1");
  coeffs_.assign(order, Gaussian());
}

RootOfUnityElement::RootOfUnityElement(int order, std::vector<Gaussian> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (order < 1 || static_cast<int>(coeffs_.size()) != order)
    throw std::invalid_argument("root-of-unity element needs exactly q coefficients");
}

RootOfUnityElement RootOfUnityElement::constant(int order, const Gaussian& c) {
  RootOfUnityElement r(order);
  r.coeffs_[0] = c;
  return r;
}

RootOfUnityElement RootOfUnityElement::t_power(int order, long exponent) {
  RootOfUnityElement r(order);
  long e = exponent % order;
  if (e < 0) e += order;
  r.coeffs_[e] = 1;
  return r;
}

bool RootOfUnityElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

void RootOfUnityElement::check_order(const RootOfUnityElement& o) const {
  if (o.order() != order())
    throw std::invalid_argument("root-of-unity ring order mismatch");
}

RootOfUnityElement& RootOfUnityElement::operator+=(const RootOfUnityElement& o) {
  check_order(o);
  for (int e = 0; e < order(); ++e)
    if (!o.coeffs_[e].is_zero()) coeffs_[e] += o.coeffs_[e];
  return *this;
}

RootOfUnityElement& RootOfUnityElement::operator-=(const RootOfUnityElement& o) {
  check_order(o);
  for (int e = 0; e < order(); ++e)
    if (!o.coeffs_[e].is_zero()) coeffs_[e] -= o.coeffs_[e];
  return *this;
}

RootOfUnityElement& RootOfUnityElement::operator*=(const RootOfUnityElement& o) {
  check_order(o);
  const int q = order();
  std::vector<Gaussian> out(q);
  for (int a = 0; a < q; ++a) {
    if (coeffs_[a].is_zero()) continue;
    for (int b = 0; b < q; ++b) {
      if (o.coeffs_[b].is_zero()) continue;
      out[(a + b) % q] += coeffs_[a] * o.coeffs_[b];
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

RootOfUnityElement& RootOfUnityElement::operator*=(const Gaussian& c) {
  for (auto& x : coeffs_)
    if (!x.is_zero()) x *= c;
  return *this;
}

RootOfUnityElement RootOfUnityElement::operator-() const {
  RootOfUnityElement r = *this;
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

namespace {

// Solves the circulant system (multiplication by `a`) * x = e_0 over Q(i).
// Returns false when the system is singular.
bool solve_circulant(const std::vector<Gaussian>& a, std::vector<Gaussian>& x) {
  const int q = static_cast<int>(a.size());
  std::vector<std::vector<Gaussian>> m(q, std::vector<Gaussian>(q + 1));
  for (int row = 0; row < q; ++row) {
    for (int col = 0; col < q; ++col) m[row][col] = a[((row - col) % q + q) % q];
    m[row][q] = row == 0 ? Gaussian(1) : Gaussian();
  }
  for (int col = 0; col < q; ++col) {
    int pivot = -1;
    for (int row = col; row < q; ++row)
      if (!m[row][col].is_zero()) {
        pivot = row;
        break;
      }
    if (pivot < 0) return false;
    std::swap(m[pivot], m[col]);
    Gaussian inv = m[col][col].inverse();
    for (int c = col; c <= q; ++c) m[col][c] *= inv;
    for (int row = 0; row < q; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      Gaussian factor = m[row][col];
      for (int c = col; c <= q; ++c) m[row][c] -= factor * m[col][c];
    }
  }
  x.resize(q);
  for (int row = 0; row < q; ++row) x[row] = m[row][q];
  return true;
}

}  // namespace

bool RootOfUnityElement::is_unit() const {
  std::vector<Gaussian> x;
  return solve_circulant(coeffs_, x);
}

RootOfUnityElement RootOfUnityElement::inverse() const {
  std::vector<Gaussian> x;
  if (is_zero()) throw std::domain_error("division by zero in Q(i)[t]/(t^q-1)");
  if (!solve_circulant(coeffs_, x))
    throw std::domain_error("not a unit in Q(i)[t]/(t^" + std::to_string(order()) +
                            "-1): " + to_string(*this));
  return RootOfUnityElement(order(), std::move(x));
}

std::complex<double> RootOfUnityElement::to_complex(std::complex<double> t) const {
  std::complex<double> acc = 0, power = 1;
  for (const auto& c : coeffs_) {
    acc += c.to_complex() * power;
    power *= t;
  }
  return acc;
}

std::string to_string(const RootOfUnityElement& x) {
  std::ostringstream out;
  bool first = true;
  for (int e = 0; e < x.order(); ++e) {
    const Gaussian& c = x[e];
    if (c.is_zero()) continue;
    std::string coef;
    bool negative = false;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      coef = Rational(abs(c.re())).get_str();
    } else {
      coef = "(" + to_string(c) + ")";
    }
    if (!first || negative) out << (negative ? "-" : "+");
    first = false;
    if (e == 0) {
      out << coef;
    } else {
      if (coef != "1") out << coef << "*";
      out << "t";
      if (e > 1) out << "^" << e;
    }
  }
  if (first) return "0";
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

RootOfUnityElement promote(const Scalar& s, int order) {
  if (s.is_gaussian()) return RootOfUnityElement::constant(order, s.gaussian());
  return s.root_of_unity();
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_gaussian() && b.is_gaussian()) return a.gaussian() + b.gaussian();
  int q = a.is_gaussian() ? b.root_of_unity().order() : a.root_of_unity().order();
  return promote(a, q) + promote(b, q);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_gaussian() && b.is_gaussian()) return a.gaussian() * b.gaussian();
  int q = a.is_gaussian() ? b.root_of_unity().order() : a.root_of_unity().order();
  return promote(a, q) * promote(b, q);
}

Scalar Scalar::operator-() const {
  if (is_gaussian()) return -gaussian();
  return -root_of_unity();
}

Scalar Scalar::inverse() const {
  if (is_gaussian()) return gaussian().inverse();
  return root_of_unity().inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_gaussian() && b.is_gaussian()) return a.gaussian() == b.gaussian();
  int q = a.is_gaussian() ? b.root_of_unity().order() : a.root_of_unity().order();
  return promote(a, q) == promote(b, q);
}

std::string to_string(const Scalar& s) {
  return s.is_gaussian() ? to_string(s.gaussian()) : to_string(s.root_of_unity());
}

}  // namespace pspec
