#include "pspec/matrix.hpp"

namespace pspec {

MatrixTuple::MatrixTuple(std::size_t k, std::vector<ScalarMatrix> matrices)
    : k_(k), matrices_(std::move(matrices)) {
  if (k_ < 1) throw std::invalid_argument("matrix tuple needs k >= 1");
  if (matrices_.empty()) throw std::invalid_argument("matrix tuple needs n >= 1");
  if (matrices_.size() > static_cast<std::size_t>(kMaxVariables))
    throw std::invalid_argument("matrix tuple supports at most 8 matrices");
  for (std::size_t j = 0; j < matrices_.size(); ++j)
    if (matrices_[j].rows() != k_ || matrices_[j].cols() != k_)
      throw std::invalid_argument("matrix " + std::to_string(j + 1) + " is not " + std::to_string(k_) + "x" +
                                  std::to_string(k_));
}

PolyMatrix pencil(const MatrixTuple& tuple) {
  const int n = static_cast<int>(tuple.count());
  const std::size_t k = tuple.size();
  PolyMatrix out(k, k, MultiPoly(n));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<Term> terms;
      for (int j = 0; j < n; ++j) {
        const Gaussian& a = tuple[j](r, c);
        if (!a.is_zero()) terms.push_back({Monomial::variable(j), a});
      }
      out(r, c) = MultiPoly::from_terms(n, std::move(terms));
    }
  return out;
}

PolyMatrix to_poly_matrix(const ScalarMatrix& m, int nvars) {
  return m.map([nvars](const Gaussian& g) { return MultiPoly::constant(nvars, g); });
}

PolyMatrix partial_derivative(const PolyMatrix& m, int var) {
  return m.map([var](const MultiPoly& p) { return p.partial_derivative(var); });
}

std::optional<int> homogeneity_degree(const PolyMatrix& m) {
  std::optional<int> degree;
  for (const auto& p : m.data()) {
    if (p.is_zero()) continue;
    auto d = homogeneity_degree(p);
    if (!d || (degree && *degree != *d)) return std::nullopt;
    degree = d;
  }
  if (!degree) throw std::domain_error("homogeneity degree of the zero matrix is undefined");
  return degree;
}

Matrix<std::complex<double>> evaluate(const PolyMatrix& m, std::span<const std::complex<double>> point) {
  return m.map([point](const MultiPoly& p) { return p.evaluate(point); });
}

ScalarMatrix matrix_unit(std::size_t k, std::size_t r, std::size_t c) {
  ScalarMatrix m(k, k, Gaussian());
  m(r, c) = 1;
  return m;
}

ScalarMatrix scalar_identity(std::size_t k) { return ScalarMatrix::identity(k, Gaussian(), Gaussian(1)); }

PolyMatrix poly_identity(std::size_t k, int nvars) {
  return PolyMatrix::identity(k, MultiPoly(nvars), MultiPoly::constant(nvars, 1));
}

int poly_matrix_nvars(const PolyMatrix& m) {
  if (m.data().empty()) throw std::invalid_argument("empty polynomial matrix");
  return m(0, 0).nvars();
}

}  // namespace pspec
