#pragma once

#include <concepts>
#include <memory>
#include <string>
#include <utility>

#include "fsetkit/exactfield.hpp"

namespace fsetkit {

// What a coefficient field must provide to carry a quadratic extension and
// the curve arithmetic built on top of it.
template <class F>
concept CoefficientField = requires(const F& a, const F& b, std::int64_t k, const BigInt& e) {
  { a + b } -> std::same_as<F>;
  { a - b } -> std::same_as<F>;
  { a * b } -> std::same_as<F>;
  { -a } -> std::same_as<F>;
  { a.inverse() } -> std::same_as<F>;
  { a.pow(e) } -> std::same_as<F>;
  { a.frobenius() } -> std::same_as<F>;
  { a.constant(k) } -> std::same_as<F>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.characteristic() } -> std::convertible_to<std::uint32_t>;
  { a == b } -> std::convertible_to<bool>;
};

// The field Base[s]/(s^2 - d) for a non-square d.
template <CoefficientField Base>
struct QuadraticField {
  QuadraticField(Base d_in, Base frob) : d(std::move(d_in)), frob_factor(std::move(frob)) {}

  Base d;
  // d^((p-1)/2), so that s^p = frob_factor * s.
  Base frob_factor;

  bool operator==(const QuadraticField& o) const { return d == o.d; }
};

// a + b*s.
template <CoefficientField Base>
class QuadraticElem {
 public:
  using Field = QuadraticField<Base>;
  using FieldPtr = std::shared_ptr<const Field>;

  QuadraticElem(FieldPtr field, Base a, Base b) : field_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {}
  QuadraticElem(FieldPtr field, Base a) : field_(std::move(field)), a_(std::move(a)), b_(a_.constant(0)) {}

  const FieldPtr& field() const { return field_; }
  const Base& a() const { return a_; }
  const Base& b() const { return b_; }
  std::uint32_t characteristic() const { return a_.characteristic(); }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool in_base() const { return b_.is_zero(); }

  QuadraticElem constant(std::int64_t c) const { return QuadraticElem(field_, a_.constant(c)); }
  QuadraticElem from_base(Base x) const { return QuadraticElem(field_, std::move(x)); }
  QuadraticElem generator() const { return QuadraticElem(field_, a_.constant(0), a_.constant(1)); }

  QuadraticElem operator+(const QuadraticElem& o) const {
    check(o);
    return QuadraticElem(field_, a_ + o.a_, b_ + o.b_);
  }
  QuadraticElem operator-(const QuadraticElem& o) const {
    check(o);
    return QuadraticElem(field_, a_ - o.a_, b_ - o.b_);
  }
  QuadraticElem operator-() const { return QuadraticElem(field_, -a_, -b_); }

  QuadraticElem operator*(const QuadraticElem& o) const {
    check(o);
    if (b_.is_zero() && o.b_.is_zero()) return QuadraticElem(field_, a_ * o.a_);
    if (b_.is_zero()) return QuadraticElem(field_, a_ * o.a_, a_ * o.b_);
    if (o.b_.is_zero()) return QuadraticElem(field_, a_ * o.a_, b_ * o.a_);
    if (a_.is_zero() && o.a_.is_zero()) return QuadraticElem(field_, b_ * o.b_ * field_->d);
    return QuadraticElem(field_, a_ * o.a_ + b_ * o.b_ * field_->d, a_ * o.b_ + o.a_ * b_);
  }

  // a^2 - b^2 d.
  Base norm() const {
    if (b_.is_zero()) return a_ * a_;
    return a_ * a_ - b_ * b_ * field_->d;
  }

  // (a + bs)^-1 = (a - bs) / (a^2 - b^2 d).
  QuadraticElem inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in quadratic extension");
    if (b_.is_zero()) return QuadraticElem(field_, a_.inverse());
    const Base n = norm();
    if (n.is_zero()) throw InternalError("nonzero element with zero norm; modulus is a square");
    const Base ni = n.inverse();
    return QuadraticElem(field_, a_ * ni, -(b_ * ni));
  }

  QuadraticElem operator/(const QuadraticElem& o) const { return *this * o.inverse(); }

  QuadraticElem pow(const BigInt& e) const {
    if (e < 0) return inverse().pow(-e);
    QuadraticElem result = constant(1);
    QuadraticElem base = *this;
    BigInt k = e;
    while (k != 0) {
      if ((k & 1) != 0) result = result * base;
      k >>= 1;
      if (k != 0) base = base * base;
    }
    return result;
  }

  // x^p: (a + bs)^p = a^p + b^p d^((p-1)/2) s.
  QuadraticElem frobenius() const {
    if (b_.is_zero()) return QuadraticElem(field_, a_.frobenius());
    return QuadraticElem(field_, a_.frobenius(), b_.frobenius() * field_->frob_factor);
  }

  bool same_field(const QuadraticElem& o) const {
    return field_ == o.field_ || (field_ && o.field_ && *field_ == *o.field_);
  }

  bool operator==(const QuadraticElem& o) const { return same_field(o) && a_ == o.a_ && b_ == o.b_; }

 private:
  void check(const QuadraticElem& o) const {
    if (!same_field(o)) throw Mismatch("elements of different quadratic extensions");
  }

  FieldPtr field_;
  Base a_, b_;
};

}  // namespace fsetkit
