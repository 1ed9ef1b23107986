#pragma once

// kappa(phi) = phi(omega_f, .., omega_f) and its companions: the
// coboundary intertwining check, tau on invariant functionals, and the
// hyperplane picture for diagonal tuples.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pspec/cochain.hpp"
#include "pspec/forms.hpp"

namespace pspec {

/// omega_f = sum_i N_i / base^power dz_i.
struct MaurerCartanData {
  int nvars = 0;
  std::size_t size = 0;
  std::vector<PolyMatrix> numerators;
  std::shared_ptr<const MultiPoly> base;
  int power = 0;
};

MaurerCartanData maurer_cartan_data(const MatrixForm& omega);

struct KappaResult {
  ScalarForm form;
  std::size_t subset_count = 0;
  std::size_t permutation_count = 0;
};

/// sum over size-a index sets I and permutations pi of I of
/// sgn(pi) phi(N_{pi(i_1)}, .., N_{pi(i_a)}) / base^(a*power) dz^I.
/// a > n gives the zero form of degree a.
KappaResult kappa(const Cochain& phi, const MaurerCartanData& omega);
KappaResult kappa(const Cochain& phi, const PolyMatrix& f);

/// phi extended to matrix-coefficient forms:
/// phi(M_1 dz^I1, .., M_a dz^Ia) = phi(M_1, .., M_a) dz^I1 ^ .. ^ dz^Ia.
/// All forms must share one denominator base (or have power 0).
ScalarForm apply_to_forms(const Cochain& phi, std::span<const MatrixForm> forms);
/// apply_to_forms(phi, {omega_f, .., omega_f}).
ScalarForm kappa_wedge_oracle(const Cochain& phi, const PolyMatrix& f);

struct FormIdentity {
  std::string name;
  ScalarForm lhs;
  ScalarForm rhs;
  bool holds = false;
};

FormIdentity compare_forms(std::string name, ScalarForm lhs, ScalarForm rhs);

struct CoboundaryReport {
  /// (a/(a+1)) kappa(b phi) = -d kappa(phi)
  FormIdentity cyclic;
  /// kappa(b phi) = -d kappa(phi) - phi(d omega, omega, .., omega)
  FormIdentity expansion;
  /// phi(d omega, omega, .., omega) = -(1/(a+1)) kappa(b phi)
  FormIdentity correction;
  bool holds() const { return cyclic.holds && expansion.holds && correction.holds; }
};

/// Throws std::invalid_argument when phi is not cyclic.
CoboundaryReport theorem29_check(const Cochain& phi, const PolyMatrix& f);

struct TauOptions {
  int trials = 8;
  std::uint64_t seed = 0;
  ConjugationGroup group = ConjugationGroup::general;
};

/// F(omega, .., omega) for F passing invariance_test; throws
/// std::domain_error otherwise.
ScalarForm tau(const Cochain& f_functional, const PolyMatrix& f, const TauOptions& options = {});
/// The degree-0 form 1.
ScalarForm tau_unit(int nvars);
/// tau(F1 x F2) = tau(F1) ^ tau(F2)
FormIdentity tau_multiplicativity(const Cochain& f1, const Cochain& f2, const PolyMatrix& f,
                                  const TauOptions& options = {});
/// d tau(F) = 0
FormIdentity tau_closedness(const Cochain& f_functional, const PolyMatrix& f, const TauOptions& options = {});

struct Hyperplane {
  MultiPoly ell;
  int multiplicity = 0;
  /// 0-based coordinates i with ell_i == ell.
  std::vector<std::size_t> coordinates;
};

struct HyperplaneDecomposition {
  /// ell_i(z) = sum_j (A_j)_{ii} z_j, one per coordinate.
  std::vector<MultiPoly> coordinate_forms;
  std::vector<Hyperplane> hyperplanes;
  /// Some ell_i is identically zero, so the spectrum is all of C^n.
  bool whole_space = false;
  bool product_matches_det = false;
  /// kappa(coordinate functional i) == d ell_i / ell_i; nullopt for ell_i == 0.
  std::vector<std::optional<bool>> log_derivative_matches;
  /// wedge over i of kappa(coordinate i) == tau(product of coordinates);
  /// nullopt when the spectrum is the whole space.
  std::optional<bool> product_tau_matches;
  bool holds() const;
};

/// Throws std::invalid_argument for non-diagonal input.
HyperplaneDecomposition hyperplane_decomposition(const MatrixTuple& tuple);

}  // namespace pspec
