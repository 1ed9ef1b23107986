#pragma once

// Exact scalars: Gaussian rationals Q(i) and the group ring Q(i)[t]/(t^q - 1)
// that carries the twist parameter of the rational noncommutative torus.

#include <complex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace pspec {

using Rational = mpq_class;

/// Element a + b*i of Q(i). Both parts are kept canonical by GMP.
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re, Rational im = 0);

  static Gaussian i() { return Gaussian(0, 1); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

  Gaussian conj() const { return Gaussian(re_, -im_); }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  /// Throws std::domain_error on zero.
  Gaussian inverse() const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o) { return *this *= o.inverse(); }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  Gaussian operator-() const { return Gaussian(-re_, -im_); }

  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_;
  Rational im_;
};

inline Gaussian zero_like(const Gaussian&) { return {}; }
inline Gaussian one_like(const Gaussian&) { return Gaussian(1); }
inline bool is_zero(const Gaussian& g) { return g.is_zero(); }

/// `a/b`, `a/b+c/d*i`, `c/d*i`; denominators of 1 are elided.
std::string to_string(const Gaussian& g);
/// Accepts the output of to_string plus `i`, `-i`, `2i`, `a+bi`. Not-lowest
/// terms are canonicalized. Throws std::invalid_argument on malformed text.
Gaussian parse_gaussian(std::string_view text);
Rational parse_rational(std::string_view text);

/// Element of Q(i)[t]/(t^q - 1), stored as q coefficients of 1, t, ..., t^{q-1}.
class RootOfUnityElement {
 public:
  RootOfUnityElement() = default;
  explicit RootOfUnityElement(int order);
  RootOfUnityElement(int order, std::vector<Gaussian> coeffs);

  static RootOfUnityElement constant(int order, const Gaussian& c);
  /// t^e, exponent reduced mod q (negative exponents allowed).
  static RootOfUnityElement t_power(int order, long exponent);

  int order() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Gaussian>& coeffs() const { return coeffs_; }
  const Gaussian& operator[](int e) const { return coeffs_[e]; }

  bool is_zero() const;
  /// True iff multiplication by this element is invertible.
  bool is_unit() const;
  /// Throws std::domain_error naming the element when it is not a unit.
  RootOfUnityElement inverse() const;

  /// Image under t -> lambda for a concrete complex root of unity.
  std::complex<double> to_complex(std::complex<double> t) const;

  RootOfUnityElement& operator+=(const RootOfUnityElement& o);
  RootOfUnityElement& operator-=(const RootOfUnityElement& o);
  RootOfUnityElement& operator*=(const RootOfUnityElement& o);
  RootOfUnityElement& operator*=(const Gaussian& c);

  friend RootOfUnityElement operator+(RootOfUnityElement a, const RootOfUnityElement& b) {
    return a += b;
  }
  friend RootOfUnityElement operator-(RootOfUnityElement a, const RootOfUnityElement& b) {
    return a -= b;
  }
  friend RootOfUnityElement operator*(RootOfUnityElement a, const RootOfUnityElement& b) {
    return a *= b;
  }
  friend RootOfUnityElement operator*(RootOfUnityElement a, const Gaussian& c) { return a *= c; }
  RootOfUnityElement operator-() const;

  friend bool operator==(const RootOfUnityElement& a, const RootOfUnityElement& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void check_order(const RootOfUnityElement& o) const;
  std::vector<Gaussian> coeffs_;
};

inline RootOfUnityElement zero_like(const RootOfUnityElement& x) {
  return RootOfUnityElement(x.order());
}
inline RootOfUnityElement one_like(const RootOfUnityElement& x) {
  return RootOfUnityElement::constant(x.order(), 1);
}
inline bool is_zero(const RootOfUnityElement& x) { return x.is_zero(); }

/// `c0+c1*t+...` with Gaussian coefficients in parentheses when non-real.
std::string to_string(const RootOfUnityElement& x);

/// Tagged scalar used at the public arithmetic surface.
class Scalar {
 public:
  Scalar() = default;
  Scalar(Gaussian g) : value_(std::move(g)) {}                   // NOLINT
  Scalar(RootOfUnityElement r) : value_(std::move(r)) {}         // NOLINT

  bool is_gaussian() const { return std::holds_alternative<Gaussian>(value_); }
  const Gaussian& gaussian() const { return std::get<Gaussian>(value_); }
  const RootOfUnityElement& root_of_unity() const {
    return std::get<RootOfUnityElement>(value_);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  /// Throws std::domain_error for zero or for a non-unit ring element.
  Scalar inverse() const;
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  std::variant<Gaussian, RootOfUnityElement> value_;
};

std::string to_string(const Scalar& s);

}  // namespace pspec
