#pragma once

// Exact arithmetic over F_p: prime-field elements, dense univariate
// polynomials in t, and rational functions in F_p(t) kept in reduced
// monic-denominator form.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsetkit/error.hpp"

namespace fsetkit {

using BigInt = boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t n);

// Throws InvalidArgument unless p is a prime with 5 <= p < 2^31.
void require_supported_prime(std::uint64_t p);

// True iff q = p^k for some k >= 1; sets *exponent to k when non-null.
bool is_power_of(const BigInt& q, std::uint32_t p, unsigned* exponent = nullptr);

// Reduction modulo a small modulus without hardware division when p < 2^16.
class Modulus {
 public:
  Modulus() = default;
  explicit Modulus(std::uint32_t p);

  std::uint32_t value() const { return p_; }

  std::uint32_t reduce(std::uint64_t x) const {
    if (x <= 0xffffffffULL) {
      const std::uint64_t low = magic_ * static_cast<std::uint32_t>(x);
      return static_cast<std::uint32_t>((static_cast<__uint128_t>(low) * p_) >> 64);
    }
    return static_cast<std::uint32_t>(x % p_);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return reduce(static_cast<std::uint64_t>(a) * b);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

 private:
  std::uint32_t p_ = 0;
  std::uint64_t magic_ = 0;
};

// Element of the prime field F_p.
class FpElem {
 public:
  FpElem() = default;
  FpElem(std::uint32_t p, std::int64_t v);

  std::uint32_t modulus() const { return p_; }
  std::uint32_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  FpElem operator+(const FpElem& o) const;
  FpElem operator-(const FpElem& o) const;
  FpElem operator*(const FpElem& o) const;
  FpElem operator/(const FpElem& o) const;
  FpElem operator-() const;
  FpElem pow(std::uint64_t e) const;

  bool operator==(const FpElem&) const = default;

 private:
  std::uint32_t p_ = 0;
  std::uint32_t v_ = 0;
};

// Multiplicative inverse; throws DivisionByZero on zero.
FpElem fp_inv(const FpElem& x);

// Polynomial in t over F_p, lowest degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::uint32_t p);
  Poly(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  static Poly constant(std::uint32_t p, std::int64_t c);
  static Poly monomial(std::uint32_t p, std::int64_t c, std::size_t degree);
  static Poly t(std::uint32_t p) { return monomial(p, 1, 1); }

  std::uint32_t characteristic() const { return p_; }
  Modulus modulus() const { return Modulus(p_); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }
  std::span<const std::uint32_t> coeffs() const { return c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(std::uint32_t c) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  // Euclidean division; throws DivisionByZero when the divisor is zero.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  Poly operator%(const Poly& divisor) const;
  // Exact quotient; throws InternalError if the division leaves a remainder.
  Poly exact_div(const Poly& divisor) const;

  Poly monic() const;
  Poly derivative() const;
  FpElem eval(const FpElem& x) const;
  Poly pow(std::uint64_t e) const;
  // f(t) -> f(t^k).
  Poly inflate(std::size_t k) const;
  // f^p, computed as f(t^p) since the coefficients lie in F_p.
  Poly frobenius() const { return inflate(p_); }

  std::string to_string() const;

  bool operator==(const Poly& o) const { return p_ == o.p_ && c_ == o.c_; }
  // Total order: degree first, then coefficients from the top down.
  std::strong_ordering operator<=>(const Poly& o) const;

 private:
  void trim();

  std::uint32_t p_ = 0;
  std::vector<std::uint32_t> c_;
};

// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(const Poly& f, const Poly& g);

struct PolyXgcd {
  Poly gcd, u, v;  // u*f + v*g = gcd
};
PolyXgcd poly_xgcd(const Poly& f, const Poly& g);

bool is_squarefree(const Poly& f);

// Element of F_p(t) with den monic and gcd(num, den) = 1.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(Poly num);
  RatFunc(Poly num, Poly den);

  static RatFunc constant(std::uint32_t p, std::int64_t c) { return RatFunc(Poly::constant(p, c)); }

  std::uint32_t characteristic() const { return num_.characteristic(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  // max(deg num, deg den), the height proxy used for pruning.
  long height() const;

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc inverse() const;
  RatFunc pow(const BigInt& e) const;
  RatFunc frobenius() const;

  // A constant of the same characteristic.
  RatFunc constant(std::int64_t c) const { return constant(characteristic(), c); }

  std::string to_string() const;

  bool operator==(const RatFunc&) const = default;

 private:
  // num/den already coprime; only the leading coefficient of den is fixed.
  static RatFunc coprime(Poly num, Poly den);

  Poly num_, den_;
};

}  // namespace fsetkit
