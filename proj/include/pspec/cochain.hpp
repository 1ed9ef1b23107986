#pragma once

// Multilinear functionals on M_k: dense tensors over matrix-unit slots,
// trace words, slot-partitioned products, linear combinations, and the
// Hochschild coboundary of any of these.
//
// A cochain is indexed by its arity a (number of arguments). Dense
// coefficients are stored flat: slot s carries the matrix-unit index
// u_s = row * k + col, slot 1 most significant, so
//   phi(x_1..x_a) = sum_u c[u_1..u_a] prod_s (x_s)_{u_s}.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pspec/matrix.hpp"
#include "pspec/random.hpp"

namespace pspec {

/// (b phi)(x_1..x_{a+1}) = sum_{j=1}^{a} (-1)^{j-1} phi(.., x_j x_{j+1}, ..)
///                         + (-1)^a phi(x_{a+1} x_1, x_2, .., x_a)
/// for any algebra: `phi` takes a std::vector<X>, `mul` multiplies two X.
template <class X, class Phi, class Mul>
auto hochschild_coboundary(const Phi& phi, std::span<const X> args, const Mul& mul)
    -> decltype(phi(std::vector<X>{})) {
  const std::size_t n = args.size();
  if (n < 2) throw std::invalid_argument("coboundary needs at least two arguments");
  using R = decltype(phi(std::vector<X>{}));
  std::vector<X> slots;
  slots.reserve(n - 1);
  auto fill = [&](std::size_t merged) {
    slots.clear();
    for (std::size_t s = 0; s < n; ++s) {
      if (s == merged) {
        slots.push_back(mul(args[s], args[s + 1]));
        ++s;
      } else {
        slots.push_back(args[s]);
      }
    }
  };
  fill(0);
  R acc = phi(slots);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    fill(j);
    if (j % 2 == 0)
      acc += phi(slots);
    else
      acc -= phi(slots);
  }
  slots.clear();
  slots.push_back(mul(args[n - 1], args[0]));
  for (std::size_t s = 1; s + 1 < n; ++s) slots.push_back(args[s]);
  if ((n - 1) % 2 == 0)
    acc += phi(slots);
  else
    acc -= phi(slots);
  return acc;
}

class Cochain {
 public:
  enum class Kind { dense, trace_word, product, sum, coboundary };

  /// coeffs.size() must be k^(2a).
  static Cochain dense(int arity, std::size_t k, std::vector<Gaussian> coeffs);
  static Cochain zero(int arity, std::size_t k);
  /// x -> x_{row,col}.
  static Cochain entry_functional(std::size_t k, std::size_t row, std::size_t col);
  /// (x_1..x_a) -> trace(x_1 ... x_a).
  static Cochain trace_word(int arity, std::size_t k);
  /// (F1 x F2)(x_1..x_{a1+a2}) = F1(x_1..x_{a1}) F2(x_{a1+1}..).
  static Cochain product(const Cochain& left, const Cochain& right);
  /// sum_i w_i F_i; all parts share arity and k.
  static Cochain linear_combination(std::vector<std::pair<Gaussian, Cochain>> parts);
  /// b(inner), evaluated through hochschild_coboundary.
  static Cochain coboundary_of(const Cochain& inner);

  Kind kind() const { return kind_; }
  int arity() const { return arity_; }
  std::size_t size() const { return k_; }
  /// Dense coefficients; throws unless kind() == dense.
  const std::vector<Gaussian>& coefficients() const;
  const std::vector<Cochain>& parts() const { return parts_; }
  const std::vector<Gaussian>& weights() const { return weights_; }

  /// Exact multilinear evaluation over Gaussian, MultiPoly or RatFn
  /// matrices (anything with zero_like, +, * and Gaussian scaling).
  template <class T>
  T evaluate(std::span<const Matrix<T>> args) const;
  template <class T>
  T evaluate(const std::vector<Matrix<T>>& args) const {
    return evaluate(std::span<const Matrix<T>>(args));
  }

  /// Human-readable description, e.g. "product(trace,traceword:2)".
  std::string describe() const;

 private:
  Cochain() = default;
  template <class T>
  void check_args(std::span<const Matrix<T>> args) const;
  template <class T>
  T evaluate_dense(std::span<const Matrix<T>> args) const;

  Kind kind_ = Kind::dense;
  int arity_ = 0;
  std::size_t k_ = 0;
  std::vector<Gaussian> coeffs_;
  std::vector<Cochain> parts_;
  std::vector<Gaussian> weights_;
};

/// Dense representation of any cochain (coefficients are its values on
/// matrix-unit tuples).
Cochain densify(const Cochain& phi);
/// b phi; dense input gives dense output via E_ij E_kl = delta_jk E_il.
Cochain coboundary(const Cochain& phi);
/// phi(x_1..x_a) == (-1)^(a-1) phi(x_a, x_1, .., x_{a-1}) identically.
bool is_cyclic(const Cochain& phi);
/// (1/a) sum_t ((-1)^(a-1))^t phi o r^t, dense output.
Cochain cyclic_symmetrize(const Cochain& phi);
/// Random dense cochain with small rational coefficients.
Cochain random_dense_cochain(SplitMix64& rng, int arity, std::size_t k, const ScalarRange& range = {});

enum class ConjugationGroup {
  /// g = unit upper triangular times lower triangular with +-1 diagonal.
  general,
  /// g invertible diagonal; arguments diagonal (commutative subalgebra).
  diagonal,
};

struct InvarianceReport {
  bool passed = true;
  int trials = 0;
  /// First failing trial index, -1 when none.
  int failing_trial = -1;
};

/// F(g x_1 g^-1, ..) == F(x_1, ..) on random g and random arguments.
InvarianceReport invariance_test(const Cochain& f, int trials, std::uint64_t seed,
                                 ConjugationGroup group = ConjugationGroup::general);

// ---------------------------------------------------------------------------

template <class T>
void Cochain::check_args(std::span<const Matrix<T>> args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("cochain of arity " + std::to_string(arity_) + " given " +
                                std::to_string(args.size()) + " arguments");
  for (const auto& m : args)
    if (m.rows() != k_ || m.cols() != k_)
      throw std::invalid_argument("cochain argument has size " + std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()) + ", expected " + std::to_string(k_));
}

template <class T>
T Cochain::evaluate_dense(std::span<const Matrix<T>> args) const {
  const std::size_t K = k_ * k_;
  const T zero = zero_like(args[0](0, 0));
  // Contract slot 1 against the Gaussian tensor, then fold the remaining
  // slots into the T-valued partial tensor.
  std::size_t stride = 1;
  for (int s = 1; s < arity_; ++s) stride *= K;
  std::vector<T> partial(stride, zero);
  const auto& first = args[0].data();
  for (std::size_t u = 0; u < K; ++u) {
    if (is_zero(first[u])) continue;
    for (std::size_t r = 0; r < stride; ++r) {
      const Gaussian& c = coeffs_[u * stride + r];
      if (c.is_zero()) continue;
      partial[r] += first[u] * c;
    }
  }
  for (int s = 1; s < arity_; ++s) {
    stride /= K;
    std::vector<T> next(stride, zero);
    const auto& x = args[s].data();
    for (std::size_t u = 0; u < K; ++u) {
      if (is_zero(x[u])) continue;
      for (std::size_t r = 0; r < stride; ++r) {
        const T& p = partial[u * stride + r];
        if (is_zero(p)) continue;
        next[r] += p * x[u];
      }
    }
    partial = std::move(next);
  }
  return std::move(partial[0]);
}

template <class T>
T Cochain::evaluate(std::span<const Matrix<T>> args) const {
  check_args(args);
  switch (kind_) {
    case Kind::dense:
      return evaluate_dense(args);
    case Kind::trace_word: {
      Matrix<T> acc = args[0];
      for (int s = 1; s < arity_; ++s) acc = acc * args[s];
      return trace(acc);
    }
    case Kind::product: {
      const int left = parts_[0].arity();
      return parts_[0].evaluate(args.subspan(0, left)) * parts_[1].evaluate(args.subspan(left));
    }
    case Kind::sum: {
      T acc = zero_like(args[0](0, 0));
      for (std::size_t i = 0; i < parts_.size(); ++i) acc += parts_[i].evaluate(args) * weights_[i];
      return acc;
    }
    case Kind::coboundary: {
      const Cochain& inner = parts_[0];
      auto phi = [&inner](const std::vector<Matrix<T>>& xs) { return inner.evaluate(xs); };
      auto mul = [](const Matrix<T>& a, const Matrix<T>& b) { return a * b; };
      return hochschild_coboundary<Matrix<T>>(phi, args, mul);
    }
  }
  throw std::logic_error("unknown cochain kind");
}

}  // namespace pspec
