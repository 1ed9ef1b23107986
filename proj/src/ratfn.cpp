#include "pspec/ratfn.hpp"

#include <sstream>
#include <stdexcept>

namespace pspec {

namespace {

bool same_base(const std::shared_ptr<const MultiPoly>& a, const std::shared_ptr<const MultiPoly>& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace

RatFn::RatFn() : num_(0), den_(MultiPoly::constant(0, 1)) {}

RatFn::RatFn(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::constant(num_.nvars(), 1)) {}

RatFn::RatFn(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.nvars() != den_.nvars()) throw std::invalid_argument("polynomial variable count mismatch");
  normalize_constant_den();
}

RatFn RatFn::over_power(MultiPoly num, std::shared_ptr<const MultiPoly> base, int power) {
  if (!base || base->is_zero()) throw std::domain_error("denominator base must be a nonzero polynomial");
  if (power < 0) throw std::invalid_argument("negative denominator power");
  RatFn r(std::move(num));
  if (r.num_.nvars() != base->nvars()) throw std::invalid_argument("polynomial variable count mismatch");
  r.den_ = base->pow(power);
  r.base_ = std::move(base);
  r.power_ = power;
  r.normalize_constant_den();
  return r;
}

void RatFn::normalize_constant_den() {
  if (!den_.is_constant()) return;
  Gaussian c = den_.constant_term();
  if (!c.is_one()) num_ *= c.inverse();
  den_ = MultiPoly::constant(num_.nvars(), 1);
  power_ = 0;
}

namespace {

// A shared base both operands are powers of, treating den == 1 as power 0.
std::shared_ptr<const MultiPoly> common_base(const RatFn& a, const RatFn& b) {
  const bool a_one = a.den().is_constant();
  const bool b_one = b.den().is_constant();
  if (a_one && b_one) return a.base() ? a.base() : b.base();
  if (a_one) return b.base();
  if (b_one) return a.base();
  if (a.base() && same_base(a.base(), b.base())) return a.base();
  return nullptr;
}

}  // namespace

RatFn& RatFn::operator+=(const RatFn& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!base_) {
      base_ = o.base_;
      power_ = o.power_;
    }
    return *this;
  }
  if (auto base = common_base(*this, o)) {
    const int p = den_.is_constant() ? 0 : power_;
    const int op = o.den_.is_constant() ? 0 : o.power_;
    if (p >= op) {
      num_ += o.num_ * base->pow(p - op);
    } else {
      num_ = num_ * base->pow(op - p) + o.num_;
      den_ = o.den_;
      power_ = op;
    }
    base_ = std::move(base);
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  base_.reset();
  power_ = 0;
  return *this;
}

RatFn& RatFn::operator*=(const RatFn& o) {
  auto base = common_base(*this, o);
  const int p = den_.is_constant() ? 0 : power_;
  const int op = o.den_.is_constant() ? 0 : o.power_;
  num_ = num_ * o.num_;
  if (!o.den_.is_constant()) den_ = den_.is_constant() ? o.den_ : den_ * o.den_;
  if (base) {
    base_ = std::move(base);
    power_ = p + op;
  } else {
    base_.reset();
    power_ = 0;
  }
  return *this;
}

RatFn& RatFn::operator*=(const Gaussian& c) {
  num_ *= c;
  return *this;
}

RatFn RatFn::operator-() const {
  RatFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFn RatFn::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of the zero rational function");
  return RatFn(den_, num_);
}

bool operator==(const RatFn& a, const RatFn& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  if (a.num_.is_zero() || b.num_.is_zero()) return a.num_.is_zero() && b.num_.is_zero();
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RatFn RatFn::partial_derivative(int var) const {
  if (den_.is_constant()) {
    RatFn r(num_.partial_derivative(var));
    r.base_ = base_;
    return r;
  }
  RatFn r;
  if (base_ && power_ > 0) {
    r.num_ = num_.partial_derivative(var) * *base_ - num_ * base_->partial_derivative(var) * Gaussian(power_);
    r.den_ = den_ * *base_;
    r.base_ = base_;
    r.power_ = power_ + 1;
    return r;
  }
  r.num_ = num_.partial_derivative(var) * den_ - num_ * den_.partial_derivative(var);
  r.den_ = den_ * den_;
  return r;
}

RatFn RatFn::reduced() const {
  RatFn r = *this;
  if (r.num_.is_zero()) return RatFn(MultiPoly(nvars()));
  if (r.den_.is_constant()) return r;
  if (r.base_ && r.power_ > 0) {
    while (r.power_ > 0) {
      auto q = exact_divide(r.num_, *r.base_);
      if (!q) break;
      r.num_ = std::move(*q);
      --r.power_;
      r.den_ = r.base_->pow(r.power_);
    }
    r.normalize_constant_den();
    return r;
  }
  if (auto q = exact_divide(r.num_, r.den_)) return RatFn(std::move(*q));
  return r;
}

std::complex<double> RatFn::evaluate(std::span<const std::complex<double>> point) const {
  std::complex<double> d = den_.evaluate(point);
  if (std::abs(d) < 1e-12) {
    std::ostringstream out;
    out << "denominator vanishes at point (";
    for (std::size_t i = 0; i < point.size(); ++i) out << (i ? ", " : "") << point[i];
    out << ")";
    throw std::domain_error(out.str());
  }
  return num_.evaluate(point) / d;
}

std::string to_string(const RatFn& r) {
  if (r.den().is_constant()) return to_string(r.num());
  return "(" + to_string(r.num()) + ")/(" + to_string(r.den()) + ")";
}

}  // namespace pspec
