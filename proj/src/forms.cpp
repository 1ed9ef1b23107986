#include "pspec/forms.hpp"

#include <algorithm>
#include <stdexcept>

namespace pspec {

MultiIndex::MultiIndex(std::span<const int> indices) {
  int previous = -1;
  for (int v : indices) {
    if (v <= previous) throw std::invalid_argument("multi-index must be strictly increasing");
    if (v >= kMaxVariables) throw std::invalid_argument("multi-index entry out of range");
    mask_ |= 1U << v;
    previous = v;
  }
}

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  for (int v = 0; v < 32; ++v)
    if (contains(v)) out.push_back(v);
  return out;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  const std::uint32_t diff = a.mask_ ^ b.mask_;
  if (diff == 0) return std::strong_ordering::equal;
  const int v = __builtin_ctz(diff);
  const bool a_has = a.contains(v);
  const std::uint32_t other = a_has ? b.mask_ : a.mask_;
  const bool other_continues = (other >> v) != 0;
  // The set holding v is smaller unless the other one stops before v.
  const bool a_smaller = a_has == other_continues;
  return a_smaller ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::optional<std::pair<int, MultiIndex>> wedge_indices(const MultiIndex& a, const MultiIndex& b) {
  if (a.mask() & b.mask()) return std::nullopt;
  int inversions = 0;
  for (int j : b.indices()) inversions += __builtin_popcount(a.mask() >> (j + 1));
  return std::make_pair(inversions % 2 == 0 ? 1 : -1, MultiIndex::from_mask(a.mask() | b.mask()));
}

std::vector<MultiIndex> multi_indices(int nvars, int size) {
  std::vector<MultiIndex> out;
  if (size < 0 || size > nvars) return out;
  for (std::uint32_t mask = 0; mask < (1U << nvars); ++mask)
    if (__builtin_popcount(mask) == size) out.push_back(MultiIndex::from_mask(mask));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

ScalarForm::ScalarForm(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("negative form degree");
}

ScalarForm ScalarForm::constant(const RatFn& c) {
  ScalarForm f(c.nvars(), 0);
  f.add_term(MultiIndex(), c);
  return f;
}

ScalarForm ScalarForm::monomial(int nvars, const MultiIndex& index, const RatFn& coeff) {
  ScalarForm f(nvars, index.size());
  f.add_term(index, coeff);
  return f;
}

ScalarForm ScalarForm::differential(int nvars, int var) {
  return monomial(nvars, MultiIndex::single(var), RatFn(MultiPoly::constant(nvars, 1)));
}

RatFn ScalarForm::coefficient(const MultiIndex& index) const {
  auto it = terms_.find(index);
  if (it == terms_.end()) return RatFn(MultiPoly(nvars_));
  return it->second;
}

void ScalarForm::add_term(const MultiIndex& index, const RatFn& coeff) {
  if (index.size() != degree_) throw std::invalid_argument("multi-index length differs from form degree");
  if (index.max_index() >= nvars_) throw std::invalid_argument("multi-index exceeds variable count");
  if (coeff.nvars() != nvars_) throw std::invalid_argument("coefficient variable count mismatch");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(index, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

void ScalarForm::check_compatible(const ScalarForm& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("form variable count mismatch");
  if (degree_ != o.degree_) throw std::invalid_argument("form degree mismatch in sum");
}

ScalarForm& ScalarForm::operator+=(const ScalarForm& o) {
  check_compatible(o);
  for (const auto& [index, c] : o.terms_) add_term(index, c);
  return *this;
}

ScalarForm& ScalarForm::operator-=(const ScalarForm& o) {
  check_compatible(o);
  for (const auto& [index, c] : o.terms_) add_term(index, -c);
  return *this;
}

ScalarForm& ScalarForm::operator*=(const RatFn& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

ScalarForm ScalarForm::operator-() const {
  ScalarForm r = *this;
  for (auto& [index, c] : r.terms_) c = -c;
  return r;
}

bool operator==(const ScalarForm& a, const ScalarForm& b) {
  if (a.nvars_ != b.nvars_ || a.degree_ != b.degree_) return false;
  for (const auto& [index, c] : a.terms_)
    if (!(c == b.coefficient(index))) return false;
  for (const auto& [index, c] : b.terms_)
    if (!a.terms_.contains(index)) return false;
  return true;
}

ScalarForm ScalarForm::reduced() const {
  ScalarForm r(nvars_, degree_);
  for (const auto& [index, c] : terms_) r.terms_.emplace(index, c.reduced());
  return r;
}

ScalarForm wedge(const ScalarForm& a, const ScalarForm& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("form variable count mismatch");
  ScalarForm out(a.nvars(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      auto w = wedge_indices(ia, ib);
      if (!w) continue;
      RatFn c = ca * cb;
      out.add_term(w->second, w->first > 0 ? c : -c);
    }
  return out;
}

ScalarForm exterior_derivative(const ScalarForm& a) {
  const int n = a.nvars();
  ScalarForm out(n, a.degree() + 1);
  for (const auto& [index, c] : a.terms())
    for (int v = 0; v < n; ++v) {
      if (index.contains(v)) continue;
      RatFn dc = c.partial_derivative(v);
      if (dc.is_zero()) continue;
      const int before = __builtin_popcount(index.mask() & ((1U << v) - 1));
      out.add_term(MultiIndex::from_mask(index.mask() | (1U << v)), before % 2 == 0 ? dc : -dc);
    }
  return out;
}

std::map<MultiIndex, std::complex<double>> evaluate_form_at(const ScalarForm& a,
                                                            std::span<const std::complex<double>> point) {
  if (static_cast<int>(point.size()) != a.nvars())
    throw std::invalid_argument("evaluation point has wrong dimension");
  std::map<MultiIndex, std::complex<double>> out;
  for (const auto& [index, c] : a.terms()) out.emplace(index, c.evaluate(point));
  return out;
}

// ---------------------------------------------------------------------------

MatrixForm::MatrixForm(int nvars, std::size_t size, int degree, MultiPoly base, int power)
    : nvars_(nvars), size_(size), degree_(degree), base_(std::move(base)), power_(power) {
  if (degree < 0) throw std::invalid_argument("negative form degree");
  if (size == 0) throw std::invalid_argument("matrix form needs k >= 1");
  if (base_.is_zero()) throw std::domain_error("matrix form denominator base is zero");
  if (base_.nvars() != nvars) throw std::invalid_argument("denominator variable count mismatch");
  if (power < 0) throw std::invalid_argument("negative denominator power");
}

MatrixForm MatrixForm::polynomial(int nvars, std::size_t size, int degree) {
  return MatrixForm(nvars, size, degree, MultiPoly::constant(nvars, 1), 0);
}

void MatrixForm::add_term(const MultiIndex& index, const PolyMatrix& numerator) {
  if (index.size() != degree_) throw std::invalid_argument("multi-index length differs from form degree");
  if (index.max_index() >= nvars_) throw std::invalid_argument("multi-index exceeds variable count");
  if (numerator.rows() != size_ || numerator.cols() != size_)
    throw std::invalid_argument("matrix form coefficient has wrong size");
  if (numerator.is_zero_matrix()) return;
  auto [it, inserted] = terms_.try_emplace(index, numerator);
  if (inserted) return;
  it->second += numerator;
  if (it->second.is_zero_matrix()) terms_.erase(it);
}

MatrixForm MatrixForm::raised_to(int power) const {
  if (power < power_) throw std::invalid_argument("cannot lower a denominator power by raising");
  if (power == power_) return *this;
  MatrixForm r(nvars_, size_, degree_, base_, power);
  const MultiPoly factor = base_.pow(power - power_);
  for (const auto& [index, m] : terms_) {
    PolyMatrix scaled = m;
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j)
        if (!scaled(i, j).is_zero()) scaled(i, j) = scaled(i, j) * factor;
    r.terms_.emplace(index, std::move(scaled));
  }
  return r;
}

MatrixForm MatrixForm::reduced() const {
  MatrixForm r = *this;
  if (base_.is_constant()) return r;
  while (r.power_ > 0 && !r.terms_.empty()) {
    std::map<MultiIndex, PolyMatrix> divided;
    bool ok = true;
    for (const auto& [index, m] : r.terms_) {
      PolyMatrix q = m;
      for (std::size_t i = 0; i < size_ && ok; ++i)
        for (std::size_t j = 0; j < size_ && ok; ++j) {
          if (m(i, j).is_zero()) continue;
          auto d = exact_divide(m(i, j), base_);
          if (!d) ok = false;
          else q(i, j) = std::move(*d);
        }
      if (!ok) break;
      divided.emplace(index, std::move(q));
    }
    if (!ok) break;
    r.terms_ = std::move(divided);
    --r.power_;
  }
  if (r.terms_.empty()) r.power_ = 0;
  return r;
}

void MatrixForm::check_compatible(const MatrixForm& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("form variable count mismatch");
  if (size_ != o.size_) throw std::invalid_argument("matrix form size mismatch");
}

namespace {

// Shared base for two denominators base_a^pa, base_b^pb; nullopt when
// they are genuinely different polynomials.
std::optional<MultiPoly> merge_base(const MultiPoly& a, int pa, const MultiPoly& b, int pb) {
  if (pa == 0 || a.is_constant()) return b;
  if (pb == 0 || b.is_constant()) return a;
  if (a == b) return a;
  return std::nullopt;
}

int effective_power(const MultiPoly& base, int power) { return base.is_constant() ? 0 : power; }

// Numerators in the constant-base case carry 1/c^p folded in.
PolyMatrix normalize_constant(const PolyMatrix& m, const MultiPoly& base, int power) {
  if (power == 0 || !base.is_constant()) return m;
  Gaussian scale = base.constant_term().inverse();
  Gaussian factor = 1;
  for (int i = 0; i < power; ++i) factor *= scale;
  PolyMatrix r = m;
  return r.scale(factor);
}

MatrixForm normalized(const MatrixForm& a) {
  if (a.power() == 0 || !a.base().is_constant()) return a;
  MatrixForm r = MatrixForm::polynomial(a.nvars(), a.size(), a.degree());
  for (const auto& [index, m] : a.terms()) r.add_term(index, normalize_constant(m, a.base(), a.power()));
  return r;
}

}  // namespace

MatrixForm& MatrixForm::operator+=(const MatrixForm& o) {
  check_compatible(o);
  if (degree_ != o.degree_) throw std::invalid_argument("form degree mismatch in sum");
  MatrixForm a = normalized(*this), b = normalized(o);
  auto base = merge_base(a.base_, a.power_, b.base_, b.power_);
  if (!base) throw std::invalid_argument("matrix forms over different denominators");
  const int p = std::max(effective_power(a.base_, a.power_), effective_power(b.base_, b.power_));
  MatrixForm ra(nvars_, size_, degree_, *base, effective_power(a.base_, a.power_));
  ra.terms_ = std::move(a.terms_);
  MatrixForm rb(nvars_, size_, degree_, *base, effective_power(b.base_, b.power_));
  rb.terms_ = std::move(b.terms_);
  ra = ra.raised_to(p);
  rb = rb.raised_to(p);
  for (const auto& [index, m] : rb.terms_) ra.add_term(index, m);
  *this = std::move(ra);
  return *this;
}

MatrixForm& MatrixForm::operator-=(const MatrixForm& o) { return *this += -o; }

MatrixForm MatrixForm::operator-() const {
  MatrixForm r = *this;
  for (auto& [index, m] : r.terms_) m = -m;
  return r;
}

bool operator==(const MatrixForm& x, const MatrixForm& y) {
  if (x.nvars_ != y.nvars_ || x.size_ != y.size_ || x.degree_ != y.degree_) return false;
  MatrixForm a = normalized(x), b = normalized(y);
  const MultiPoly da = a.denominator(), db = b.denominator();
  auto times = [](const PolyMatrix& m, const MultiPoly& p) {
    PolyMatrix r = m;
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = r(i, j) * p;
    return r;
  };
  std::map<MultiIndex, bool> seen;
  for (const auto& [index, m] : a.terms_) seen[index] = true;
  for (const auto& [index, m] : b.terms_) seen[index] = true;
  const PolyMatrix zero(a.size_, a.size_, MultiPoly(a.nvars_));
  for (const auto& [index, unused] : seen) {
    auto ia = a.terms_.find(index);
    auto ib = b.terms_.find(index);
    const PolyMatrix& ma = ia == a.terms_.end() ? zero : ia->second;
    const PolyMatrix& mb = ib == b.terms_.end() ? zero : ib->second;
    if (!(times(ma, db) == times(mb, da))) return false;
  }
  return true;
}

std::shared_ptr<const MultiPoly> MatrixForm::shared_base() const { return std::make_shared<const MultiPoly>(base_); }

RatMatrix MatrixForm::coefficient(const MultiIndex& index) const {
  auto base = shared_base();
  RatMatrix out(size_, size_, RatFn(MultiPoly(nvars_)));
  auto it = terms_.find(index);
  if (it == terms_.end()) return out;
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) out(i, j) = RatFn::over_power(it->second(i, j), base, power_);
  return out;
}

MatrixForm wedge(const MatrixForm& a, const MatrixForm& b) {
  a.check_compatible(b);
  const int n = a.nvars_;
  const int degree = a.degree_ + b.degree_;
  auto base = merge_base(a.base_, a.power_, b.base_, b.power_);
  if (!base) throw std::invalid_argument("matrix forms over different denominators");
  MatrixForm out(n, a.size_, degree, *base, effective_power(a.base_, a.power_) + effective_power(b.base_, b.power_));
  for (const auto& [ia, ma] : a.terms_) {
    PolyMatrix na = normalize_constant(ma, a.base_, a.power_);
    for (const auto& [ib, mb] : b.terms_) {
      auto w = wedge_indices(ia, ib);
      if (!w) continue;
      PolyMatrix prod = na * normalize_constant(mb, b.base_, b.power_);
      out.add_term(w->second, w->first > 0 ? prod : -prod);
    }
  }
  return out;
}

MatrixForm exterior_derivative(const MatrixForm& x) {
  const MatrixForm a = normalized(x);
  const int n = a.nvars_;
  const std::size_t k = a.size_;
  const bool structured = a.power_ > 0;
  MatrixForm out(n, k, a.degree_ + 1, a.base_, structured ? a.power_ + 1 : 0);
  std::vector<MultiPoly> dbase;
  if (structured)
    for (int v = 0; v < n; ++v) dbase.push_back(a.base_.partial_derivative(v));
  const Gaussian p(a.power_);
  for (const auto& [index, m] : a.terms_)
    for (int v = 0; v < n; ++v) {
      if (index.contains(v)) continue;
      PolyMatrix dm = partial_derivative(m, v);
      if (structured) {
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) {
            MultiPoly e = dm(i, j) * a.base_;
            if (!m(i, j).is_zero() && !dbase[v].is_zero()) e -= m(i, j) * dbase[v] * p;
            dm(i, j) = std::move(e);
          }
      }
      const int before = __builtin_popcount(index.mask() & ((1U << v) - 1));
      out.add_term(MultiIndex::from_mask(index.mask() | (1U << v)), before % 2 == 0 ? dm : -dm);
    }
  return out;
}

ScalarForm trace(const MatrixForm& a) {
  ScalarForm out(a.nvars(), a.degree());
  auto base = a.shared_base();
  for (const auto& [index, m] : a.terms()) out.add_term(index, RatFn::over_power(trace(m), base, a.power()));
  return out;
}

MatrixForm wedge_power(const MatrixForm& a, int count) {
  if (count < 1) throw std::invalid_argument("wedge power needs count >= 1");
  MatrixForm r = a;
  for (int i = 1; i < count; ++i) r = wedge(r, a);
  return r;
}

MatrixForm maurer_cartan(const PolyMatrix& f) {
  if (!f.is_square() || f.rows() == 0) throw std::invalid_argument("maurer_cartan needs a square matrix");
  const int n = poly_matrix_nvars(f);
  MultiPoly det = determinant(f);
  if (det.is_zero()) throw std::domain_error("empty resolvent set");
  const PolyMatrix adj = adjugate(f);
  MatrixForm omega(n, f.rows(), 1, det, 1);
  for (int v = 0; v < n; ++v) omega.add_term(MultiIndex::single(v), adj * partial_derivative(f, v));
  return normalized(omega);
}

}  // namespace pspec
