#include "pspec/cochain.hpp"

#include <sstream>

namespace pspec {

namespace {

std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Slot digits of a flat dense index, slot 1 first.
std::vector<std::size_t> digits(std::size_t flat, std::size_t K, int arity) {
  std::vector<std::size_t> d(arity);
  for (int s = arity; s-- > 0;) {
    d[s] = flat % K;
    flat /= K;
  }
  return d;
}

std::size_t undigits(const std::vector<std::size_t>& d, std::size_t K) {
  std::size_t flat = 0;
  for (auto x : d) flat = flat * K + x;
  return flat;
}

}  // namespace

Cochain Cochain::dense(int arity, std::size_t k, std::vector<Gaussian> coeffs) {
  if (arity < 1) throw std::invalid_argument("cochain arity must be >= 1");
  if (k < 1) throw std::invalid_argument("cochain matrix size must be >= 1");
  if (coeffs.size() != ipow(k * k, arity))
    throw std::invalid_argument("dense cochain of arity " + std::to_string(arity) + " on M_" + std::to_string(k) +
                                " needs " + std::to_string(ipow(k * k, arity)) + " coefficients");
  Cochain c;
  c.kind_ = Kind::dense;
  c.arity_ = arity;
  c.k_ = k;
  c.coeffs_ = std::move(coeffs);
  return c;
}

Cochain Cochain::zero(int arity, std::size_t k) {
  return dense(arity, k, std::vector<Gaussian>(ipow(k * k, arity)));
}

Cochain Cochain::entry_functional(std::size_t k, std::size_t row, std::size_t col) {
  if (row >= k || col >= k) throw std::out_of_range("entry functional index out of range");
  std::vector<Gaussian> coeffs(k * k);
  coeffs[row * k + col] = 1;
  return dense(1, k, std::move(coeffs));
}

Cochain Cochain::trace_word(int arity, std::size_t k) {
  if (arity < 1) throw std::invalid_argument("cochain arity must be >= 1");
  if (k < 1) throw std::invalid_argument("cochain matrix size must be >= 1");
  Cochain c;
  c.kind_ = Kind::trace_word;
  c.arity_ = arity;
  c.k_ = k;
  return c;
}

Cochain Cochain::product(const Cochain& left, const Cochain& right) {
  if (left.k_ != right.k_) throw std::invalid_argument("product of cochains on different matrix sizes");
  Cochain c;
  c.kind_ = Kind::product;
  c.arity_ = left.arity_ + right.arity_;
  c.k_ = left.k_;
  c.parts_ = {left, right};
  return c;
}

Cochain Cochain::linear_combination(std::vector<std::pair<Gaussian, Cochain>> parts) {
  if (parts.empty()) throw std::invalid_argument("empty linear combination of cochains");
  Cochain c;
  c.kind_ = Kind::sum;
  c.arity_ = parts[0].second.arity_;
  c.k_ = parts[0].second.k_;
  for (auto& [w, p] : parts) {
    if (p.arity_ != c.arity_ || p.k_ != c.k_)
      throw std::invalid_argument("linear combination of cochains with different arity or size");
    c.weights_.push_back(std::move(w));
    c.parts_.push_back(std::move(p));
  }
  return c;
}

Cochain Cochain::coboundary_of(const Cochain& inner) {
  Cochain c;
  c.kind_ = Kind::coboundary;
  c.arity_ = inner.arity_ + 1;
  c.k_ = inner.k_;
  c.parts_ = {inner};
  return c;
}

const std::vector<Gaussian>& Cochain::coefficients() const {
  if (kind_ != Kind::dense) throw std::logic_error("coefficients() on a structured cochain; densify first");
  return coeffs_;
}

std::string Cochain::describe() const {
  switch (kind_) {
    case Kind::dense:
      return "dense:" + std::to_string(arity_) + ":" + std::to_string(k_);
    case Kind::trace_word:
      return arity_ == 1 ? "trace" : "traceword:" + std::to_string(arity_);
    case Kind::product:
      return "product(" + parts_[0].describe() + "," + parts_[1].describe() + ")";
    case Kind::sum: {
      std::ostringstream out;
      out << "sum(";
      for (std::size_t i = 0; i < parts_.size(); ++i)
        out << (i ? "," : "") << to_string(weights_[i]) << "*" << parts_[i].describe();
      out << ")";
      return out.str();
    }
    case Kind::coboundary:
      return "b(" + parts_[0].describe() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------

Cochain densify(const Cochain& phi) {
  if (phi.kind() == Cochain::Kind::dense) return phi;
  const std::size_t k = phi.size();
  const std::size_t K = k * k;
  const int a = phi.arity();
  std::vector<ScalarMatrix> units;
  for (std::size_t u = 0; u < K; ++u) units.push_back(matrix_unit(k, u / k, u % k));
  std::vector<Gaussian> coeffs(ipow(K, a));
  std::vector<ScalarMatrix> args(a);
  for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
    auto d = digits(flat, K, a);
    for (int s = 0; s < a; ++s) args[s] = units[d[s]];
    coeffs[flat] = phi.evaluate(args);
  }
  return Cochain::dense(a, k, std::move(coeffs));
}

Cochain coboundary(const Cochain& phi) {
  if (phi.kind() != Cochain::Kind::dense) return Cochain::coboundary_of(phi);
  const std::size_t k = phi.size();
  const std::size_t K = k * k;
  const int a = phi.arity();
  const auto& c = phi.coefficients();
  std::vector<Gaussian> out(ipow(K, a + 1));
  std::vector<std::size_t> merged(a);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    auto u = digits(flat, K, a + 1);
    Gaussian acc;
    // E_u[j] E_u[j+1] = E_(row j, col j+1) when col j == row j+1.
    for (int j = 0; j < a; ++j) {
      if (u[j] % k != u[j + 1] / k) continue;
      std::size_t pos = 0;
      for (int s = 0; s < a + 1; ++s) {
        if (s == j) {
          merged[pos++] = (u[j] / k) * k + u[j + 1] % k;
          ++s;
        } else {
          merged[pos++] = u[s];
        }
      }
      const Gaussian& v = c[undigits(merged, K)];
      if (v.is_zero()) continue;
      if (j % 2 == 0)
        acc += v;
      else
        acc -= v;
    }
    if (u[a] % k == u[0] / k) {
      merged[0] = (u[a] / k) * k + u[0] % k;
      for (int s = 1; s < a; ++s) merged[s] = u[s];
      const Gaussian& v = c[undigits(merged, K)];
      if (!v.is_zero()) {
        if (a % 2 == 0)
          acc += v;
        else
          acc -= v;
      }
    }
    out[flat] = std::move(acc);
  }
  return Cochain::dense(a + 1, k, std::move(out));
}

namespace {

// Flat index of (u_a, u_1, .., u_{a-1}): coefficient of phi o r.
std::size_t rotate_index(std::size_t flat, std::size_t K, int arity) {
  const std::size_t top = ipow(K, arity - 1);
  return (flat % K) * top + flat / K;
}

}  // namespace

bool is_cyclic(const Cochain& phi) {
  const Cochain d = densify(phi);
  const int a = d.arity();
  const std::size_t K = d.size() * d.size();
  const bool negate = (a - 1) % 2 == 1;
  const auto& c = d.coefficients();
  for (std::size_t flat = 0; flat < c.size(); ++flat) {
    const Gaussian& rotated = c[rotate_index(flat, K, a)];
    if (!(c[flat] == (negate ? -rotated : rotated))) return false;
  }
  return true;
}

Cochain cyclic_symmetrize(const Cochain& phi) {
  const Cochain d = densify(phi);
  const int a = d.arity();
  const std::size_t K = d.size() * d.size();
  const bool negate = (a - 1) % 2 == 1;
  const auto& c = d.coefficients();
  const Gaussian scale = Gaussian(Rational(1, a));
  std::vector<Gaussian> out(c.size());
  for (std::size_t flat = 0; flat < c.size(); ++flat) {
    Gaussian acc;
    std::size_t idx = flat;
    for (int t = 0; t < a; ++t) {
      const bool neg = negate && t % 2 == 1;
      if (neg)
        acc -= c[idx];
      else
        acc += c[idx];
      idx = rotate_index(idx, K, a);
    }
    out[flat] = acc * scale;
  }
  return Cochain::dense(a, d.size(), std::move(out));
}

Cochain random_dense_cochain(SplitMix64& rng, int arity, std::size_t k, const ScalarRange& range) {
  std::vector<Gaussian> coeffs(ipow(k * k, arity));
  for (auto& c : coeffs) c = random_gaussian(rng, range);
  return Cochain::dense(arity, k, std::move(coeffs));
}

// ---------------------------------------------------------------------------

namespace {

std::pair<ScalarMatrix, ScalarMatrix> random_conjugator(SplitMix64& rng, std::size_t k, ConjugationGroup group) {
  if (group == ConjugationGroup::diagonal) {
    ScalarMatrix g(k, k, Gaussian()), inv(k, k, Gaussian());
    for (std::size_t i = 0; i < k; ++i) {
      Gaussian d;
      while (d.is_zero()) d = random_gaussian(rng);
      g(i, i) = d;
      inv(i, i) = d.inverse();
    }
    return {g, inv};
  }
  ScalarMatrix upper = scalar_identity(k), lower(k, k, Gaussian());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (j > i) upper(i, j) = random_gaussian(rng);
      if (j < i) lower(i, j) = random_gaussian(rng);
      if (j == i) lower(i, j) = rng.coin(1, 2) ? Gaussian(1) : Gaussian(-1);
    }
  ScalarMatrix g = upper * lower;
  ScalarMatrix inv = adjugate(g);
  inv.scale(determinant(g).inverse());
  return {g, inv};
}

}  // namespace

InvarianceReport invariance_test(const Cochain& f, int trials, std::uint64_t seed, ConjugationGroup group) {
  if (trials < 1) throw std::invalid_argument("invariance test needs trials >= 1");
  const std::size_t k = f.size();
  InvarianceReport report;
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    auto [g, inv] = random_conjugator(rng, k, group);
    std::vector<ScalarMatrix> args, conj;
    for (int s = 0; s < f.arity(); ++s) {
      ScalarMatrix x = random_scalar_matrix(rng, k);
      if (group == ConjugationGroup::diagonal)
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            if (i != j) x(i, j) = Gaussian();
      conj.push_back(g * x * inv);
      args.push_back(std::move(x));
    }
    ++report.trials;
    if (!(f.evaluate(conj) == f.evaluate(args))) {
      report.passed = false;
      report.failing_trial = t;
      return report;
    }
  }
  return report;
}

}  // namespace pspec
