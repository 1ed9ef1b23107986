#pragma once

// Trace powers of the Maurer-Cartan form, the top-degree factorization
// phi(omega^(n-1)) = q s for homogeneous f with n even, and the cubic
// invariant p(z) of a 4-variable pencil.

#include <array>
#include <map>
#include <optional>

#include "pspec/chenweil.hpp"

namespace pspec {

/// sum_j (-1)^j z_j dz_{jbar} with 1-based j; throws for odd n or n < 2.
ScalarForm s_form(int n);

/// phi(omega^m) as sum over index sets of the full permutation expansion
/// of omega ^ .. ^ omega; trace words go through trace(wedge_power).
ScalarForm trace_power_wedge(const PolyMatrix& f, int m, const Cochain& phi);
/// m sum_J sum_pi sgn(pi) phi(W_{j1}, W_pi(j2), ..) dz^J with the smallest
/// index anchored in slot 1. Throws std::invalid_argument for even m.
ScalarForm trace_power_anchored(const PolyMatrix& f, int m, const Cochain& phi);
/// Wedge path; for odd m also the anchored path, throwing std::logic_error
/// when they differ. Requires 1 <= m <= n and phi of arity m.
ScalarForm trace_power_form(const PolyMatrix& f, int m, const Cochain& phi);

struct TopFormFactorization {
  RatFn q;
  ScalarForm s;
  ScalarForm residual;
  /// barI[j] with T's coefficient on dz_{jbar} equal to (n-1) barI[j].
  std::vector<RatFn> barI;
  /// z_i barI[n-1] == (-1)^(i+1) z_n barI[i] for every 0-based i < n-1.
  bool relations_hold = false;
  /// Exponent e with q = polynomial / det(f)^e after reduction; empty when
  /// q is zero or its denominator is not a power of det(f).
  std::optional<int> det_power;
};

/// Throws std::invalid_argument when n is odd, f is not homogeneous or phi
/// does not have arity n-1, and std::domain_error naming the two 1-based
/// multi-indices when the coefficient ratios disagree.
TopFormFactorization factorize_top_form(const PolyMatrix& f, const Cochain& phi);

using IndexTriple = std::array<int, 3>;

struct PencilCubicData {
  /// det^2 tr(omega^3) / (3 s).
  MultiPoly p;
  std::optional<int> p_degree;
  /// tr(W_i W_j W_k - W_i W_k W_j) with W_i = A(z)^-1 A_i, 0-based i<j<k.
  std::map<IndexTriple, RatFn> I;
  MultiPoly det;
  MultiPoly det_squared;
  TopFormFactorization factorization;
  /// tr(B A_1 B A_2 B A_3 - B A_1 B A_3 B A_2) with B the adjugate.
  MultiPoly cubic_numerator;
  /// cubic_numerator / det, exact.
  MultiPoly cubic_quotient;
  /// cubic_quotient == z_4 p.
  bool quotient_matches_p = false;

  const RatFn& I123() const { return I.at({0, 1, 2}); }
};

/// Requires four k x k matrices. Throws std::domain_error when p or the
/// cubic quotient is not a polynomial, or p is not homogeneous of degree
/// 2k-4.
PencilCubicData theorem33_p(const MatrixTuple& a);

/// -det of the 4x4 matrix whose column j is (A_j(1,1), A_j(1,2), A_j(2,1),
/// A_j(2,2)). Requires k = 2 and four matrices.
Gaussian example35_constant(const MatrixTuple& a);

}  // namespace pspec
