#include "pspec/random.hpp"

#include <stdexcept>

namespace pspec {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty random range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 a(seed);
  std::uint64_t h = a.next();
  SplitMix64 b(h ^ (index * 0xd6e8feb86659fd93ULL + 0x632be59bd9b4e019ULL));
  return b.next();
}

Rational random_rational(SplitMix64& rng, const ScalarRange& range) {
  Rational r(static_cast<long>(rng.uniform(-range.max_numerator, range.max_numerator)),
             static_cast<unsigned long>(rng.uniform(1, range.max_denominator)));
  r.canonicalize();
  return r;
}

Gaussian random_gaussian(SplitMix64& rng, const ScalarRange& range) {
  Rational re = random_rational(rng, range);
  if (range.imaginary_eighths > 0 && rng.coin(range.imaginary_eighths, 8))
    return Gaussian(re, random_rational(rng, range));
  return Gaussian(re);
}

ScalarMatrix random_scalar_matrix(SplitMix64& rng, std::size_t k, const ScalarRange& range) {
  ScalarMatrix m(k, k, Gaussian());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(i, j) = random_gaussian(rng, range);
  return m;
}

MatrixTuple random_tuple(SplitMix64& rng, std::size_t n, std::size_t k, const ScalarRange& range) {
  std::vector<ScalarMatrix> ms;
  for (std::size_t j = 0; j < n; ++j) ms.push_back(random_scalar_matrix(rng, k, range));
  return MatrixTuple(k, std::move(ms));
}

MatrixTuple random_regular_tuple(SplitMix64& rng, std::size_t n, std::size_t k, const ScalarRange& range) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    MatrixTuple t = random_tuple(rng, n, k, range);
    if (!determinant(pencil(t)).is_zero()) return t;
  }
  throw std::runtime_error("no regular random tuple found");
}

namespace {

Monomial random_monomial(SplitMix64& rng, int nvars, int degree) {
  std::vector<int> e(nvars, 0);
  for (int d = 0; d < degree; ++d) ++e[rng.uniform(0, nvars - 1)];
  return Monomial(e);
}

Gaussian nonzero_gaussian(SplitMix64& rng, const ScalarRange& range) {
  for (;;) {
    Gaussian g = random_gaussian(rng, range);
    if (!g.is_zero()) return g;
  }
}

}  // namespace

MultiPoly random_polynomial(SplitMix64& rng, int nvars, int max_degree, int terms, const ScalarRange& range) {
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t)
    ts.push_back({random_monomial(rng, nvars, static_cast<int>(rng.uniform(0, max_degree))),
                  nonzero_gaussian(rng, range)});
  return MultiPoly::from_terms(nvars, std::move(ts));
}

MultiPoly random_homogeneous(SplitMix64& rng, int nvars, int degree, int terms, const ScalarRange& range) {
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t) ts.push_back({random_monomial(rng, nvars, degree), nonzero_gaussian(rng, range)});
  return MultiPoly::from_terms(nvars, std::move(ts));
}

PolyMatrix random_quadratic_matrix(SplitMix64& rng, std::size_t k, int nvars, const ScalarRange& range) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    PolyMatrix m(k, k, MultiPoly(nvars));
    bool all_nonzero = true;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        m(i, j) = random_homogeneous(rng, nvars, 2, 2, range);
        if (m(i, j).is_zero()) all_nonzero = false;
      }
    if (all_nonzero && !determinant(m).is_zero()) return m;
  }
  throw std::runtime_error("no regular quadratic matrix found");
}

}  // namespace pspec
