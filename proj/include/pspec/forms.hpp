#pragma once

// Holomorphic differential forms on the resolvent set: scalar forms with
// rational-function coefficients, matrix forms over a shared power of
// det(f), the exterior derivative and the Maurer-Cartan form f^{-1} df.

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pspec/matrix.hpp"
#include "pspec/ratfn.hpp"

namespace pspec {

/// Strictly increasing set of 0-based variable indices, dz_{i1} ^ ... ^ dz_{ir}.
class MultiIndex {
 public:
  MultiIndex() = default;
  /// Throws std::invalid_argument unless strictly increasing and < 8.
  explicit MultiIndex(std::span<const int> indices);
  static MultiIndex from_mask(std::uint32_t mask) {
    MultiIndex m;
    m.mask_ = mask;
    return m;
  }
  static MultiIndex single(int var) { return from_mask(1U << var); }
  /// {0..n-1} minus `var`.
  static MultiIndex complement_of(int nvars, int var) {
    return from_mask(((1U << nvars) - 1) & ~(1U << var));
  }

  std::uint32_t mask() const { return mask_; }
  int size() const { return __builtin_popcount(mask_); }
  bool contains(int var) const { return (mask_ >> var) & 1U; }
  std::vector<int> indices() const;
  int max_index() const { return mask_ ? 31 - __builtin_clz(mask_) : -1; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  /// Lexicographic on the increasing sequences.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::uint32_t mask_ = 0;
};

/// dz^I ^ dz^J = sign dz^{I u J}; std::nullopt when I and J overlap.
std::optional<std::pair<int, MultiIndex>> wedge_indices(const MultiIndex& a, const MultiIndex& b);

/// All size-r subsets of {0..n-1} in lexicographic order.
std::vector<MultiIndex> multi_indices(int nvars, int size);

class ScalarForm {
 public:
  ScalarForm() = default;
  /// Degrees above nvars are allowed and always hold the zero form.
  ScalarForm(int nvars, int degree);

  static ScalarForm constant(const RatFn& c);
  static ScalarForm monomial(int nvars, const MultiIndex& index, const RatFn& coeff);
  /// dz_{var}
  static ScalarForm differential(int nvars, int var);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const std::map<MultiIndex, RatFn>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Zero coefficient when absent.
  RatFn coefficient(const MultiIndex& index) const;

  /// Accumulates; exact zeros are dropped.
  void add_term(const MultiIndex& index, const RatFn& coeff);

  ScalarForm& operator+=(const ScalarForm& o);
  ScalarForm& operator-=(const ScalarForm& o);
  ScalarForm& operator*=(const RatFn& c);
  friend ScalarForm operator+(ScalarForm a, const ScalarForm& b) { return a += b; }
  friend ScalarForm operator-(ScalarForm a, const ScalarForm& b) { return a -= b; }
  friend ScalarForm operator*(ScalarForm a, const RatFn& c) { return a *= c; }
  friend ScalarForm operator*(const RatFn& c, ScalarForm a) { return a *= c; }
  ScalarForm operator-() const;

  /// Coefficient-wise, RatFn equality by cross-multiplication.
  friend bool operator==(const ScalarForm& a, const ScalarForm& b);

  /// Coefficients passed through RatFn::reduced().
  ScalarForm reduced() const;

 private:
  void check_compatible(const ScalarForm& o) const;
  int nvars_ = 0;
  int degree_ = 0;
  std::map<MultiIndex, RatFn> terms_;
};

ScalarForm wedge(const ScalarForm& a, const ScalarForm& b);
/// d(c dz^I) = sum_v dc/dz_v dz_v ^ dz^I. Only the holomorphic part acts.
ScalarForm exterior_derivative(const ScalarForm& a);
/// Coefficient-wise numeric evaluation; throws std::domain_error at a pole.
std::map<MultiIndex, std::complex<double>> evaluate_form_at(const ScalarForm& a,
                                                            std::span<const std::complex<double>> point);

/// Matrix-valued form sum_I N_I / base^power dz^I with polynomial numerator
/// matrices and one shared denominator.
class MatrixForm {
 public:
  MatrixForm() = default;
  MatrixForm(int nvars, std::size_t size, int degree, MultiPoly base, int power);

  /// Constant-denominator form.
  static MatrixForm polynomial(int nvars, std::size_t size, int degree);

  int nvars() const { return nvars_; }
  std::size_t size() const { return size_; }
  int degree() const { return degree_; }
  const MultiPoly& base() const { return base_; }
  int power() const { return power_; }
  MultiPoly denominator() const { return base_.pow(power_); }
  const std::map<MultiIndex, PolyMatrix>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MultiIndex& index, const PolyMatrix& numerator);

  /// Rewrites over base^power for power >= power().
  MatrixForm raised_to(int power) const;
  /// Divides every numerator by base while it divides all of them exactly.
  MatrixForm reduced() const;

  MatrixForm& operator+=(const MatrixForm& o);
  MatrixForm& operator-=(const MatrixForm& o);
  friend MatrixForm operator+(MatrixForm a, const MatrixForm& b) { return a += b; }
  friend MatrixForm operator-(MatrixForm a, const MatrixForm& b) { return a -= b; }
  MatrixForm operator-() const;

  /// Equal as forms (cross-multiplied over the shared base).
  friend bool operator==(const MatrixForm& a, const MatrixForm& b);

  /// Coefficient matrix of dz^I as RatFn entries.
  RatMatrix coefficient(const MultiIndex& index) const;
  std::shared_ptr<const MultiPoly> shared_base() const;

 private:
  friend MatrixForm wedge(const MatrixForm& a, const MatrixForm& b);
  friend MatrixForm exterior_derivative(const MatrixForm& a);
  void check_compatible(const MatrixForm& o) const;
  int nvars_ = 0;
  std::size_t size_ = 0;
  int degree_ = 0;
  MultiPoly base_;
  int power_ = 0;
  std::map<MultiIndex, PolyMatrix> terms_;
};

/// Coefficients multiply in order (noncommutative); denominators add powers.
MatrixForm wedge(const MatrixForm& a, const MatrixForm& b);
MatrixForm exterior_derivative(const MatrixForm& a);
/// trace applied coefficient-wise.
ScalarForm trace(const MatrixForm& a);
/// wedge of `count` copies.
MatrixForm wedge_power(const MatrixForm& a, int count);

/// omega_f = sum_i B_i dz_i with B_i = adjugate(f) df/dz_i over det(f).
/// Throws std::domain_error("empty resolvent set") when det(f) == 0.
MatrixForm maurer_cartan(const PolyMatrix& f);

}  // namespace pspec
