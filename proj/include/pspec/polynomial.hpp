#pragma once

// Multivariate polynomials in z1..zn over Q(i), graded-lex ordered.

#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pspec/scalar.hpp"

namespace pspec {

inline constexpr int kMaxVariables = 8;
inline constexpr int kMaxMonomialDegree = 255;

/// Exponent vector packed one byte per variable, z1 in the most significant
/// byte, so that integer comparison of the packed word is lex order with
/// z1 > z2 > ... once total degrees agree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::span<const int> exponents);

  static Monomial variable(int var, int power = 1);

  int exponent(int var) const {
    return static_cast<int>((packed_ >> (8 * (kMaxVariables - 1 - var))) & 0xffU);
  }
  int degree() const { return static_cast<int>(degree_); }
  bool is_one() const { return packed_ == 0; }

  bool divides(const Monomial& other) const;
  /// Throws std::overflow_error when the total degree would exceed 255.
  Monomial operator*(const Monomial& other) const;
  /// Precondition: divides(other) for other = *this / divisor.
  Monomial operator/(const Monomial& divisor) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return a.packed_ <=> b.packed_;
  }

 private:
  std::uint64_t packed_ = 0;
  std::uint32_t degree_ = 0;
};

struct Term {
  Monomial mono;
  Gaussian coeff;
};

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(int nvars);

  static MultiPoly constant(int nvars, const Gaussian& c);
  /// z_{var+1}; variables are 0-based in the API and 1-based in text.
  static MultiPoly variable(int nvars, int var);
  static MultiPoly monomial(int nvars, const Monomial& m, const Gaussian& c);
  /// Terms in any order; duplicates are combined and zeros dropped.
  static MultiPoly from_terms(int nvars, std::vector<Term> terms);

  int nvars() const { return nvars_; }
  /// Strictly descending graded-lex order, no zero coefficients.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// Constant term (zero when absent).
  Gaussian constant_term() const;
  /// Highest total degree; -1 for the zero polynomial.
  int total_degree() const;
  const Term& leading_term() const { return terms_.front(); }

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly& operator*=(const Gaussian& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Gaussian& c) { return a *= c; }
  friend MultiPoly operator*(const Gaussian& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(int e) const;
  MultiPoly partial_derivative(int var) const;
  std::complex<double> evaluate(std::span<const std::complex<double>> point) const;

 private:
  void check_compatible(const MultiPoly& o) const;
  int nvars_ = 0;
  std::vector<Term> terms_;
};

inline MultiPoly zero_like(const MultiPoly& p) { return MultiPoly(p.nvars()); }
inline MultiPoly one_like(const MultiPoly& p) { return MultiPoly::constant(p.nvars(), 1); }
inline bool is_zero(const MultiPoly& p) { return p.is_zero(); }

/// Quotient when d divides p exactly; std::nullopt otherwise.
/// Throws std::domain_error when d is zero.
std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& d);

/// m when every monomial has total degree m, std::nullopt otherwise.
/// Throws std::domain_error for the zero polynomial.
std::optional<int> homogeneity_degree(const MultiPoly& p);

/// Sum_k z_k dp/dz_k.
MultiPoly euler_operator(const MultiPoly& p);

/// Graded-lex descending terms `c*z1^e1*...`, coefficient and exponent 1
/// elided, non-real coefficients parenthesized; zero prints as `0`.
std::string to_string(const MultiPoly& p);
/// Parses the to_string format (also tolerant of spaces). Throws
/// std::invalid_argument with the offending position.
MultiPoly parse_polynomial(std::string_view text, int nvars);

}  // namespace pspec
