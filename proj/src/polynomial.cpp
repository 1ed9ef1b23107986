#include "pspec/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pspec {

namespace {

constexpr int shift_of(int var) { return 8 * (kMaxVariables - 1 - var); }

void check_var(int var) {
  if (var < 0 || var >= kMaxVariables)
    throw std::out_of_range("variable index out of range: " + std::to_string(var));
}

}  // namespace

Monomial::Monomial(std::span<const int> exponents) {
  if (exponents.size() > static_cast<std::size_t>(kMaxVariables))
    throw std::invalid_argument("at most 8 variables are supported");
  for (std::size_t v = 0; v < exponents.size(); ++v) {
    int e = exponents[v];
    if (e < 0) throw std::invalid_argument("negative exponent");
    degree_ += static_cast<std::uint32_t>(e);
    if (degree_ > kMaxMonomialDegree) throw std::overflow_error("monomial degree exceeds 255");
    packed_ |= static_cast<std::uint64_t>(e) << shift_of(static_cast<int>(v));
  }
}

Monomial Monomial::variable(int var, int power) {
  check_var(var);
  if (power < 0 || power > kMaxMonomialDegree) throw std::overflow_error("monomial degree exceeds 255");
  Monomial m;
  m.packed_ = static_cast<std::uint64_t>(power) << shift_of(var);
  m.degree_ = static_cast<std::uint32_t>(power);
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (int v = 0; v < kMaxVariables; ++v)
    if (exponent(v) > other.exponent(v)) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  // Per-byte addition cannot carry while the total degree stays <= 255.
  if (degree_ + other.degree_ > kMaxMonomialDegree) throw std::overflow_error("monomial degree exceeds 255");
  Monomial m;
  m.packed_ = packed_ + other.packed_;
  m.degree_ = degree_ + other.degree_;
  return m;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial m;
  m.packed_ = packed_ - divisor.packed_;
  m.degree_ = degree_ - divisor.degree_;
  return m;
}

// ---------------------------------------------------------------------------

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
  if (nvars < 0 || nvars > kMaxVariables)
    throw std::invalid_argument("variable count must be in 0..8, got " + std::to_string(nvars));
}

MultiPoly MultiPoly::constant(int nvars, const Gaussian& c) {
  MultiPoly p(nvars);
  if (!c.is_zero()) p.terms_.push_back({Monomial(), c});
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int var) {
  if (var < 0 || var >= nvars) throw std::out_of_range("variable index out of range");
  return monomial(nvars, Monomial::variable(var), 1);
}

MultiPoly MultiPoly::monomial(int nvars, const Monomial& m, const Gaussian& c) {
  MultiPoly p(nvars);
  for (int v = nvars; v < kMaxVariables; ++v)
    if (m.exponent(v) != 0) throw std::out_of_range("monomial uses a variable beyond nvars");
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

MultiPoly MultiPoly::from_terms(int nvars, std::vector<Term> terms) {
  MultiPoly p(nvars);
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.mono > b.mono; });
  for (auto& t : terms) {
    for (int v = nvars; v < kMaxVariables; ++v)
      if (t.mono.exponent(v) != 0) throw std::out_of_range("monomial uses a variable beyond nvars");
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.coeff.is_zero(); });
  return p;
}

Gaussian MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return {};
}

int MultiPoly::total_degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (o.nvars_ != nvars_)
    throw std::invalid_argument("polynomial variable count mismatch: " + std::to_string(nvars_) +
                                " vs " + std::to_string(o.nvars_));
}

namespace {

// Merges two descending term lists; sign = -1 subtracts `b`.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back({b[j].mono, subtract ? -b[j].coeff : b[j].coeff});
      ++j;
    } else {
      Gaussian c = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_compatible(o);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_compatible(o);
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly out(a.nvars_);
  if (a.terms_.empty() || b.terms_.empty()) return out;
  if (b.terms_.size() == 1 || a.terms_.size() == 1) {
    const MultiPoly& many = b.terms_.size() == 1 ? a : b;
    const Term& single = b.terms_.size() == 1 ? b.terms_[0] : a.terms_[0];
    out.terms_.reserve(many.terms_.size());
    // Multiplying by a monomial preserves the order.
    for (const auto& t : many.terms_) out.terms_.push_back({t.mono * single.mono, t.coeff * single.coeff});
    return out;
  }
  // Sort products by monomial, then sum coefficients group by group.
  struct Slot {
    Monomial mono;
    std::uint32_t i, j;
  };
  std::vector<Slot> slots;
  slots.reserve(a.terms_.size() * b.terms_.size());
  for (std::uint32_t i = 0; i < a.terms_.size(); ++i)
    for (std::uint32_t j = 0; j < b.terms_.size(); ++j)
      slots.push_back({a.terms_[i].mono * b.terms_[j].mono, i, j});
  std::sort(slots.begin(), slots.end(), [](const Slot& x, const Slot& y) { return x.mono > y.mono; });
  for (std::size_t s = 0; s < slots.size();) {
    std::size_t e = s;
    Gaussian acc;
    while (e < slots.size() && slots[e].mono == slots[s].mono) {
      acc += a.terms_[slots[e].i].coeff * b.terms_[slots[e].j].coeff;
      ++e;
    }
    if (!acc.is_zero()) out.terms_.push_back({slots[s].mono, std::move(acc)});
    s = e;
  }
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  return true;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  MultiPoly result = constant(nvars_, 1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::partial_derivative(int var) const {
  if (var < 0 || var >= nvars_) throw std::out_of_range("partial derivative variable out of range");
  std::vector<Term> out;
  const Monomial unit = Monomial::variable(var);
  for (const auto& t : terms_) {
    int e = t.mono.exponent(var);
    if (e == 0) continue;
    out.push_back({t.mono / unit, t.coeff * Gaussian(e)});
  }
  // Dividing by z_var keeps graded-lex order, so `out` is already sorted.
  MultiPoly r(nvars_);
  r.terms_ = std::move(out);
  return r;
}

std::complex<double> MultiPoly::evaluate(std::span<const std::complex<double>> point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw std::invalid_argument("evaluation point has wrong dimension");
  std::complex<double> acc = 0;
  for (const auto& t : terms_) {
    std::complex<double> v = t.coeff.to_complex();
    for (int var = 0; var < nvars_; ++var) {
      int e = t.mono.exponent(var);
      for (int k = 0; k < e; ++k) v *= point[var];
    }
    acc += v;
  }
  return acc;
}

std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& d) {
  if (d.is_zero()) throw std::domain_error("exact_divide by the zero polynomial");
  if (p.nvars() != d.nvars()) throw std::invalid_argument("polynomial variable count mismatch");
  if (p.is_zero()) return MultiPoly(p.nvars());
  const Term& lead = d.leading_term();
  const Gaussian lead_inv = lead.coeff.inverse();
  if (d.size() == 1) {
    std::vector<Term> q;
    q.reserve(p.size());
    for (const auto& t : p.terms()) {
      if (!lead.mono.divides(t.mono)) return std::nullopt;
      q.push_back({t.mono / lead.mono, t.coeff * lead_inv});
    }
    return MultiPoly::from_terms(p.nvars(), std::move(q));
  }
  // If d | p exactly, LT(remainder) is always divisible by LT(d); the first
  // failure proves non-divisibility.
  std::map<Monomial, Gaussian, std::greater<>> rem;
  for (const auto& t : p.terms()) rem.emplace(t.mono, t.coeff);
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lead.mono.divides(it->first)) return std::nullopt;
    Monomial qm = it->first / lead.mono;
    Gaussian qc = it->second * lead_inv;
    for (const auto& t : d.terms()) {
      Monomial m = t.mono * qm;
      auto [pos, inserted] = rem.try_emplace(m);
      pos->second -= t.coeff * qc;
      if (pos->second.is_zero()) rem.erase(pos);
    }
    quotient.push_back({qm, std::move(qc)});
  }
  return MultiPoly::from_terms(p.nvars(), std::move(quotient));
}

std::optional<int> homogeneity_degree(const MultiPoly& p) {
  if (p.is_zero()) throw std::domain_error("homogeneity degree of the zero polynomial is undefined");
  int m = p.terms().front().mono.degree();
  for (const auto& t : p.terms())
    if (t.mono.degree() != m) return std::nullopt;
  return m;
}

MultiPoly euler_operator(const MultiPoly& p) {
  std::vector<Term> out;
  for (const auto& t : p.terms())
    if (t.mono.degree() != 0) out.push_back({t.mono, t.coeff * Gaussian(t.mono.degree())});
  return MultiPoly::from_terms(p.nvars(), std::move(out));
}

// ---------------------------------------------------------------------------

std::string to_string(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const Gaussian& c = t.coeff;
    std::string coef;
    bool negative = false;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      coef = Rational(abs(c.re())).get_str();
    } else {
      coef = "(" + to_string(c) + ")";
    }
    if (negative) {
      out << "-";
    } else if (!first) {
      out << "+";
    }
    first = false;
    bool wrote = false;
    if (t.mono.is_one() || coef != "1") {
      out << coef;
      wrote = true;
    }
    for (int v = 0; v < p.nvars(); ++v) {
      int e = t.mono.exponent(v);
      if (e == 0) continue;
      if (wrote) out << "*";
      out << "z" << (v + 1);
      if (e > 1) out << "^" << e;
      wrote = true;
    }
  }
  return out.str();
}

namespace {

[[noreturn]] void bad_poly(std::string_view text, std::size_t pos, const std::string& why) {
  throw std::invalid_argument("malformed polynomial '" + std::string(text) + "' at position " +
                              std::to_string(pos) + ": " + why);
}

}  // namespace

MultiPoly parse_polynomial(std::string_view text, int nvars) {
  std::string s;
  std::vector<std::size_t> origin;  // position in `text` of each kept char
  for (std::size_t i = 0; i < text.size(); ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s.push_back(text[i]);
      origin.push_back(i);
    }
  if (s.empty()) bad_poly(text, 0, "empty");
  auto at = [&](std::size_t pos) { return pos < origin.size() ? origin[pos] : text.size(); };

  std::vector<Term> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      bad_poly(text, at(pos), "expected '+' or '-'");
    }
    std::size_t end = pos;
    int depth = 0;
    while (end < s.size()) {
      char c = s[end];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth < 0) bad_poly(text, at(end), "unbalanced ')'");
      if (depth == 0 && (c == '+' || c == '-') && end > pos) break;
      ++end;
    }
    if (depth != 0) bad_poly(text, at(pos), "unbalanced '('");
    if (end == pos) bad_poly(text, at(pos), "empty term");

    Gaussian coeff(negative ? -1 : 1);
    std::vector<int> exps(nvars, 0);
    std::size_t f = pos;
    while (f < end) {
      std::size_t g = f;
      int d = 0;
      while (g < end && !(d == 0 && s[g] == '*')) {
        if (s[g] == '(') ++d;
        if (s[g] == ')') --d;
        ++g;
      }
      std::string_view factor(s.data() + f, g - f);
      if (factor.empty()) bad_poly(text, at(f), "empty factor");
      if (factor.front() == '(') {
        if (factor.back() != ')') bad_poly(text, at(f), "expected ')'");
        try {
          coeff *= parse_gaussian(factor.substr(1, factor.size() - 2));
        } catch (const std::invalid_argument& e) {
          bad_poly(text, at(f), e.what());
        }
      } else if (factor.front() == 'z') {
        std::size_t caret = factor.find('^');
        std::string_view idx = factor.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1);
        int e = 1;
        if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          bad_poly(text, at(f), "bad variable name");
        int v = std::stoi(std::string(idx));
        if (v < 1 || v > nvars) bad_poly(text, at(f), "variable z" + std::to_string(v) + " outside z1..z" + std::to_string(nvars));
        if (caret != std::string_view::npos) {
          std::string_view ex = factor.substr(caret + 1);
          if (ex.empty() || !std::all_of(ex.begin(), ex.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            bad_poly(text, at(f), "bad exponent");
          e = std::stoi(std::string(ex));
        }
        exps[v - 1] += e;
      } else {
        try {
          coeff *= parse_gaussian(factor);
        } catch (const std::invalid_argument& e) {
          bad_poly(text, at(f), e.what());
        }
      }
      f = g + 1;
    }
    terms.push_back({Monomial(exps), coeff});
    pos = end;
  }
  return MultiPoly::from_terms(nvars, std::move(terms));
}

}  // namespace pspec
