#pragma once

// Dense matrices over any of the exact rings (Gaussian, MultiPoly, RatFn),
// pencils of scalar matrix tuples, determinant, adjugate and minors.

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pspec/polynomial.hpp"
#include "pspec/ratfn.hpp"
#include "pspec/scalar.hpp"

namespace pspec {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t k, const T& zero, const T& one) {
    Matrix m(k, k, zero);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<T>& data() const { return data_; }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  template <class S>
  Matrix& scale(const S& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("matrix size mismatch in product: " + std::to_string(a.cols_) +
                                  " vs " + std::to_string(b.rows_));
    if (a.data_.empty() || b.data_.empty()) return Matrix(a.rows_, b.cols_, T{});
    Matrix out(a.rows_, b.cols_, zero_like(a.data_[0]));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T& x = a(i, l);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& y = b(l, j);
          if (is_zero(y)) continue;
          out(i, j) += x * y;
        }
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!(a.data_[i] == b.data_[i])) return false;
    return true;
  }

  bool is_zero_matrix() const {
    for (const auto& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> values;
    values.reserve(data_.size());
    for (const auto& x : data_) values.push_back(f(x));
    return Matrix<U>::from_data(rows_, cols_, std::move(values));
  }

  static Matrix from_data(std::size_t rows, std::size_t cols, std::vector<T> data) {
    if (data.size() != rows * cols) throw std::invalid_argument("matrix data has wrong length");
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(data);
    return m;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix size mismatch");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ScalarMatrix = Matrix<Gaussian>;
using PolyMatrix = Matrix<MultiPoly>;
using RatMatrix = Matrix<RatFn>;

template <class T>
T trace(const Matrix<T>& m) {
  if (!m.is_square()) throw std::invalid_argument("trace of a non-square matrix");
  if (m.rows() == 0) throw std::invalid_argument("trace of an empty matrix");
  T acc = zero_like(m(0, 0));
  for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
  return acc;
}

namespace detail {

// Laplace expansion along successive rows with minors memoized by the set
// of remaining columns (bitmask), bottom row first.
template <class T>
T determinant_memo(const Matrix<T>& m, const T& one) {
  const std::size_t k = m.rows();
  if (k == 0) return one;
  if (k > 20) throw std::invalid_argument("determinant size too large");
  const std::uint32_t full = (1U << k) - 1;
  std::vector<std::optional<T>> minor(1U << k);
  minor[0] = one;
  for (std::size_t used = 1; used <= k; ++used) {
    const std::size_t row = k - used;
    for (std::uint32_t cols = 1; cols <= full; ++cols) {
      if (static_cast<std::size_t>(__builtin_popcount(cols)) != used) continue;
      T acc = zero_like(one);
      int position = 0;
      for (std::size_t c = 0; c < k; ++c) {
        if (!(cols & (1U << c))) continue;
        const T& entry = m(row, c);
        const T& sub = *minor[cols & ~(1U << c)];
        if (!is_zero(entry) && !is_zero(sub)) {
          if (position % 2 == 0)
            acc += entry * sub;
          else
            acc -= entry * sub;
        }
        ++position;
      }
      minor[cols] = std::move(acc);
    }
  }
  return *minor[full];
}

template <class T>
Matrix<T> remove_rows_cols(const Matrix<T>& m, std::initializer_list<std::size_t> rows,
                           std::initializer_list<std::size_t> cols) {
  auto skip = [](std::size_t i, std::initializer_list<std::size_t> s) {
    for (auto x : s)
      if (x == i) return true;
    return false;
  };
  std::vector<T> data;
  std::size_t r_out = 0, c_out = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (skip(r, rows)) continue;
    ++r_out;
    c_out = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (skip(c, cols)) continue;
      ++c_out;
      data.push_back(m(r, c));
    }
  }
  if (r_out == 0) c_out = 0;
  return Matrix<T>::from_data(r_out, c_out, std::move(data));
}

}  // namespace detail

template <class T>
T determinant(const Matrix<T>& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) throw std::invalid_argument("determinant of an empty matrix needs a ring prototype");
  return detail::determinant_memo(m, one_like(m(0, 0)));
}

/// Transposed signed cofactors: adjugate(M) * M = det(M) * I. The 1x1
/// adjugate is [1].
template <class T>
Matrix<T> adjugate(const Matrix<T>& m) {
  if (!m.is_square() || m.rows() == 0) throw std::invalid_argument("adjugate of a non-square matrix");
  const std::size_t k = m.rows();
  const T one = one_like(m(0, 0));
  Matrix<T> adj(k, k, zero_like(one));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      T minor = detail::determinant_memo(detail::remove_rows_cols(m, {j}, {i}), one);
      adj(i, j) = (i + j) % 2 == 0 ? minor : -minor;
    }
  return adj;
}

/// det of M with rows {i,p} and columns {j,q} removed (0-based); the empty
/// determinant is 1.
template <class T>
T double_minor(const Matrix<T>& m, std::pair<std::size_t, std::size_t> rows,
               std::pair<std::size_t, std::size_t> cols) {
  const std::size_t k = m.rows();
  if (!m.is_square() || k < 2) throw std::invalid_argument("double_minor needs a square matrix with k >= 2");
  if (rows.first == rows.second) throw std::invalid_argument("double_minor: repeated row index");
  if (cols.first == cols.second) throw std::invalid_argument("double_minor: repeated column index");
  if (rows.first >= k || rows.second >= k || cols.first >= k || cols.second >= k)
    throw std::out_of_range("double_minor index out of range");
  return detail::determinant_memo(detail::remove_rows_cols(m, {rows.first, rows.second}, {cols.first, cols.second}),
                                  one_like(m(0, 0)));
}

/// Both sides of Jacobi's adjugate identity with B# read as the cofactor
/// matrix (the transpose of the adjugate):
///   cof(i,j) cof(p,q) - cof(i,q) cof(p,j)
///     = sgn(p-i) sgn(q-j) (-1)^(i+j+p+q) det(B) double_minor(B, (i,p), (j,q)).
template <class T>
std::pair<T, T> jacobi_adjugate_sides(const Matrix<T>& b, const Matrix<T>& adj, const T& det,
                                      std::size_t i, std::size_t p, std::size_t j, std::size_t q) {
  auto cof = [&](std::size_t r, std::size_t c) -> const T& { return adj(c, r); };
  T lhs = cof(i, j) * cof(p, q) - cof(i, q) * cof(p, j);
  T rhs = det * double_minor(b, {i, p}, {j, q});
  int sign = ((i + j + p + q) % 2 == 0) ? 1 : -1;
  if (p < i) sign = -sign;
  if (q < j) sign = -sign;
  if (sign < 0) rhs = -rhs;
  return {std::move(lhs), std::move(rhs)};
}

// ---------------------------------------------------------------------------
// Pencils

/// A_1..A_n, each k x k over Q(i).
class MatrixTuple {
 public:
  MatrixTuple(std::size_t k, std::vector<ScalarMatrix> matrices);
  std::size_t size() const { return k_; }
  std::size_t count() const { return matrices_.size(); }
  const ScalarMatrix& operator[](std::size_t j) const { return matrices_[j]; }
  const std::vector<ScalarMatrix>& matrices() const { return matrices_; }
  friend bool operator==(const MatrixTuple&, const MatrixTuple&) = default;

 private:
  std::size_t k_;
  std::vector<ScalarMatrix> matrices_;
};

/// A(z) = z_1 A_1 + ... + z_n A_n with n = tuple.count().
PolyMatrix pencil(const MatrixTuple& tuple);
PolyMatrix to_poly_matrix(const ScalarMatrix& m, int nvars);
PolyMatrix partial_derivative(const PolyMatrix& m, int var);
/// All entries' common homogeneity degree, std::nullopt if none. Zero
/// entries are ignored; throws std::domain_error if every entry is zero.
std::optional<int> homogeneity_degree(const PolyMatrix& m);
Matrix<std::complex<double>> evaluate(const PolyMatrix& m, std::span<const std::complex<double>> point);
ScalarMatrix matrix_unit(std::size_t k, std::size_t r, std::size_t c);
ScalarMatrix scalar_identity(std::size_t k);
PolyMatrix poly_identity(std::size_t k, int nvars);
int poly_matrix_nvars(const PolyMatrix& m);

}  // namespace pspec
