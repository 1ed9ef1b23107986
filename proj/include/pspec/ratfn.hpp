#pragma once

// Elements num/den of the function field. No global GCD: when the
// denominator is known to be base^power for a designated polynomial (the
// determinant of a pencil), sums stay over the larger power instead of the
// product of denominators, and reduced() strips common powers of base.

#include <complex>
#include <memory>
#include <span>
#include <string>

#include "pspec/polynomial.hpp"

namespace pspec {

class RatFn {
 public:
  RatFn();
  explicit RatFn(MultiPoly num);
  /// Throws std::domain_error when den is zero.
  RatFn(MultiPoly num, MultiPoly den);

  /// num / base^power with the structure recorded.
  static RatFn over_power(MultiPoly num, std::shared_ptr<const MultiPoly> base, int power);

  int nvars() const { return num_.nvars(); }
  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  /// Designated base of the denominator, or nullptr when unstructured.
  const std::shared_ptr<const MultiPoly>& base() const { return base_; }
  int power() const { return power_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFn& operator+=(const RatFn& o);
  RatFn& operator-=(const RatFn& o) { return *this += -o; }
  RatFn& operator*=(const RatFn& o);
  RatFn& operator*=(const Gaussian& c);

  friend RatFn operator+(RatFn a, const RatFn& b) { return a += b; }
  friend RatFn operator-(RatFn a, const RatFn& b) { return a -= b; }
  friend RatFn operator*(RatFn a, const RatFn& b) { return a *= b; }
  friend RatFn operator*(RatFn a, const Gaussian& c) { return a *= c; }
  friend RatFn operator*(const Gaussian& c, RatFn a) { return a *= c; }
  RatFn operator-() const;

  /// Throws std::domain_error on zero.
  RatFn inverse() const;

  /// Cross-multiplied: num1*den2 == num2*den1.
  friend bool operator==(const RatFn& a, const RatFn& b);

  /// Quotient rule; structured denominators grow by one power of base.
  RatFn partial_derivative(int var) const;
  /// Strips powers of base (or the whole denominator) dividing num exactly.
  RatFn reduced() const;

  /// Throws std::domain_error naming the point when |den(point)| < 1e-12.
  std::complex<double> evaluate(std::span<const std::complex<double>> point) const;

 private:
  void normalize_constant_den();
  MultiPoly num_;
  MultiPoly den_;
  std::shared_ptr<const MultiPoly> base_;
  int power_ = 0;
};

inline RatFn zero_like(const RatFn& r) { return RatFn(MultiPoly(r.nvars())); }
inline RatFn one_like(const RatFn& r) { return RatFn(MultiPoly::constant(r.nvars(), 1)); }
inline bool is_zero(const RatFn& r) { return r.is_zero(); }

/// `num` when the denominator is 1, otherwise `(num)/(den)`.
std::string to_string(const RatFn& r);

}  // namespace pspec
