#pragma once

// Finite fields F_{p^k} = F_p[t]/(g) for a monic irreducible g. They serve as
// residue fields of F_p(t) at the place g, and as the fields F_q over which
// curve points are counted.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "fsetkit/exactfield.hpp"

namespace fsetkit {

// Rabin's test: g of degree k is irreducible iff g | t^{p^k} - t and
// gcd(t^{p^{k/r}} - t, g) = 1 for every prime r | k.
bool is_irreducible(const Poly& g);

// The lexicographically first monic irreducible of the given degree.
Poly first_irreducible(std::uint32_t p, std::size_t degree);

// Visits monic irreducibles of the given degree in Poly order until the
// visitor returns false.
void visit_monic_irreducibles(std::uint32_t p, std::size_t degree, const std::function<bool(const Poly&)>& visit);

// All monic irreducibles of exactly the given degree, in Poly order.
std::vector<Poly> monic_irreducibles(std::uint32_t p, std::size_t degree);

class GaloisField {
 public:
  // Throws InvalidArgument unless g is monic irreducible of degree >= 1.
  explicit GaloisField(Poly g);

  const Poly& modulus() const { return g_; }
  std::uint32_t characteristic() const { return g_.characteristic(); }
  std::size_t degree() const { return static_cast<std::size_t>(g_.degree()); }
  const BigInt& order() const { return order_; }

  bool operator==(const GaloisField& o) const { return g_ == o.g_; }

 private:
  Poly g_;
  BigInt order_;
};

class GaloisElem {
 public:
  using FieldPtr = std::shared_ptr<const GaloisField>;

  GaloisElem(FieldPtr field, const Poly& value);

  const FieldPtr& field() const { return field_; }
  const Poly& value() const { return v_; }
  std::uint32_t characteristic() const { return v_.characteristic(); }
  bool is_zero() const { return v_.is_zero(); }

  GaloisElem constant(std::int64_t c) const { return GaloisElem(field_, Poly::constant(characteristic(), c)); }

  GaloisElem operator+(const GaloisElem& o) const;
  GaloisElem operator-(const GaloisElem& o) const;
  GaloisElem operator*(const GaloisElem& o) const;
  GaloisElem operator-() const;
  GaloisElem inverse() const;
  GaloisElem pow(const BigInt& e) const;
  GaloisElem frobenius() const;

  // Euler's criterion; zero counts as a square.
  bool is_square() const;

  // Index in [0, p^k) from the base-p digits of the coefficients.
  std::uint64_t index() const;

  bool operator==(const GaloisElem& o) const;

 private:
  void check(const GaloisElem& o) const;

  FieldPtr field_;
  Poly v_;
};

}  // namespace fsetkit
