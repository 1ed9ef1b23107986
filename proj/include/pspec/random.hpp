#pragma once

// Deterministic generators for test data. Every stream is SplitMix64;
// per-trial streams come from derive_seed(seed, index) so that trials are
// independent of evaluation order.

#include <cstdint>
#include <vector>

#include "pspec/matrix.hpp"
#include "pspec/polynomial.hpp"
#include "pspec/scalar.hpp"

namespace pspec {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on [lo, hi], by rejection.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin(int numerator, int denominator) { return uniform(0, denominator - 1) < numerator; }

 private:
  std::uint64_t state_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

struct ScalarRange {
  int max_numerator = 4;
  int max_denominator = 3;
  /// Chance (in 1/8ths) of a nonzero imaginary part.
  int imaginary_eighths = 0;
};

Rational random_rational(SplitMix64& rng, const ScalarRange& range = {});
Gaussian random_gaussian(SplitMix64& rng, const ScalarRange& range = {});
ScalarMatrix random_scalar_matrix(SplitMix64& rng, std::size_t k, const ScalarRange& range = {});
MatrixTuple random_tuple(SplitMix64& rng, std::size_t n, std::size_t k, const ScalarRange& range = {});
/// Pencil of a random tuple whose determinant is not identically zero.
MatrixTuple random_regular_tuple(SplitMix64& rng, std::size_t n, std::size_t k, const ScalarRange& range = {});
/// Random polynomial with `terms` monomials of total degree <= max_degree.
MultiPoly random_polynomial(SplitMix64& rng, int nvars, int max_degree, int terms, const ScalarRange& range = {});
/// Random homogeneous polynomial of the given degree.
MultiPoly random_homogeneous(SplitMix64& rng, int nvars, int degree, int terms, const ScalarRange& range = {});
/// k x k matrix of homogeneous quadratics with det not identically zero.
PolyMatrix random_quadratic_matrix(SplitMix64& rng, std::size_t k, int nvars, const ScalarRange& range = {});

}  // namespace pspec
