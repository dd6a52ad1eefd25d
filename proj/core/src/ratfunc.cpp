#include <limits>

#include "fsetkit/exactfield.hpp"

namespace fsetkit {

namespace {

void check_same(const RatFunc& a, const RatFunc& b) {
  if (a.characteristic() != b.characteristic()) {
    throw Mismatch("rational functions over different prime fields");
  }
}

}  // namespace

RatFunc RatFunc::coprime(Poly num, Poly den) {
  RatFunc r;
  if (num.is_zero()) {
    r.num_ = Poly(den.characteristic());
    r.den_ = Poly::constant(den.characteristic(), 1);
    return r;
  }
  if (den.is_monic()) {
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }
  const std::uint32_t li = den.modulus().inv(den.leading());
  r.num_ = num.scaled(li);
  r.den_ = den.scaled(li);
  return r;
}

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.characteristic(), 1)) {}

RatFunc::RatFunc(Poly num, Poly den) {
  if (num.characteristic() != den.characteristic()) throw Mismatch("numerator and denominator fields differ");
  if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
  const std::uint32_t p = den.characteristic();
  if (num.is_zero()) {
    num_ = Poly(p);
    den_ = Poly::constant(p, 1);
    return;
  }
  if (!den.is_constant()) {
    Poly g = poly_gcd(num, den);
    if (!g.is_one()) {
      num = num.exact_div(g);
      den = den.exact_div(g);
    }
  }
  const std::uint32_t li = den.modulus().inv(den.leading());
  num_ = num.scaled(li);
  den_ = den.scaled(li);
}

long RatFunc::height() const { return std::max(num_.degree(), den_.degree()); }

RatFunc RatFunc::operator+(const RatFunc& o) const {
  check_same(*this, o);
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ + o.num_);
  const Poly g = poly_gcd(den_, o.den_);
  if (g.is_one()) return coprime(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  const Poly b = den_.exact_div(g);
  const Poly d = o.den_.exact_div(g);
  Poly num = num_ * d + o.num_ * b;
  if (num.is_zero()) return RatFunc(num);
  Poly den = b * o.den_;
  const Poly g2 = poly_gcd(num, g);
  if (!g2.is_one()) {
    num = num.exact_div(g2);
    den = den.exact_div(g2);
  }
  return coprime(std::move(num), std::move(den));
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  check_same(*this, o);
  if (is_zero() || o.is_zero()) return RatFunc(Poly(characteristic()));
  Poly a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_one()) {
    const Poly g1 = poly_gcd(a, d);
    if (!g1.is_one()) {
      a = a.exact_div(g1);
      d = d.exact_div(g1);
    }
  }
  if (!b.is_one()) {
    const Poly g2 = poly_gcd(c, b);
    if (!g2.is_one()) {
      c = c.exact_div(g2);
      b = b.exact_div(g2);
    }
  }
  return coprime(a * c, b * d);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  return coprime(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::pow(const BigInt& e) const {
  if (e < 0) return inverse().pow(-e);
  if (e > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw ResourceLimit("exponent too large for dense arithmetic");
  }
  const auto k = static_cast<std::uint64_t>(e);
  // Powers of coprime polynomials stay coprime.
  RatFunc r;
  r.num_ = num_.pow(k);
  r.den_ = den_.pow(k);
  return r;
}

RatFunc RatFunc::frobenius() const {
  RatFunc r;
  r.num_ = num_.frobenius();
  r.den_ = den_.frobenius();
  return r;
}

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace fsetkit
