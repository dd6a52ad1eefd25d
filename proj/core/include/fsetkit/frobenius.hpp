#pragma once

// The q-power Frobenius as an operator on points, point counting over F_q,
// characteristic polynomials, and checks of integral relations h(F) = 0.

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsetkit/group.hpp"

namespace fsetkit {

class FrobeniusOp {
 public:
  // Throws InvalidArgument unless q = p^k with k >= 1.
  FrobeniusOp(std::uint32_t p, const BigInt& q);

  std::uint32_t p() const { return p_; }
  const BigInt& q() const { return q_; }
  // k with q = p^k.
  unsigned p_steps() const { return k_; }

  bool operator==(const FrobeniusOp&) const = default;

 private:
  std::uint32_t p_;
  BigInt q_;
  unsigned k_ = 0;
};

// Monic integer polynomial of degree >= 1, coefficients lowest first.
class IntPoly {
 public:
  IntPoly() = default;
  // Throws InvalidArgument unless monic with degree >= 1.
  explicit IntPoly(std::vector<BigInt> coeffs);
  static IntPoly from_ints(std::initializer_list<long long> coeffs);

  std::size_t degree() const { return c_.size() - 1; }
  const BigInt& coeff(std::size_t i) const { return c_[i]; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt eval(const BigInt& x) const;

  // "[c0, c1, ..., 1]".
  std::string to_string() const;

  bool operator==(const IntPoly&) const = default;

 private:
  std::vector<BigInt> c_;
};

IntPoly intpoly_mul(const IntPoly& a, const IntPoly& b);
// Monic gcd over Q (integral by Gauss's lemma); empty when coprime.
std::optional<IntPoly> intpoly_gcd(const IntPoly& a, const IntPoly& b);
IntPoly intpoly_lcm(const IntPoly& a, const IntPoly& b);

ECPoint frob_apply(const FrobeniusOp& op, const ECPoint& P, std::uint64_t iterations);
ProductPoint frob_apply(const FrobeniusOp& op, const ProductPoint& P, std::uint64_t iterations);

// Residue-field points; the p-power map applied p_steps() * iterations times.
ResiduePoint frob_apply(const FrobeniusOp& op, const ResiduePoint& P, std::uint64_t iterations);

inline constexpr std::uint64_t kMaxCountableQ = 1'000'000;

// #E(F_q) including infinity by enumerating x; q <= kMaxCountableQ.
BigInt count_points(const CurveParams& curve, const BigInt& q);

// x^2 - a x + q with a = q + 1 - #E(F_q); asserts |a| <= 2 sqrt(q).
IntPoly char_poly_frobenius(const CurveParams& curve, const BigInt& q);

// Trace of the q-Frobenius for any q = p^k, from the F_p count and the
// recurrence a_{k+1} = a_1 a_k - p a_{k-1}.
BigInt frobenius_trace(const CurveParams& curve, const BigInt& q);

// sum_i c_i F^i(P) for the relation coefficients c_i.
template <CoefficientField F>
BasicECPoint<F> apply_relation(const IntPoly& h, const FrobeniusOp& op, const BasicECPoint<F>& P) {
  BasicECPoint<F> acc = BasicECPoint<F>::infinity(P.curve());
  BasicECPoint<F> cur = P;
  for (std::size_t i = 0; i <= h.degree(); ++i) {
    if (h.coeff(i) != 0) acc = ec_add(acc, ec_scalar_mul(h.coeff(i), cur));
    if (i < h.degree()) cur = ec_frobenius(cur, op.p_steps());
  }
  return acc;
}

bool verify_relation(const IntPoly& h, const FrobeniusOp& op, std::span<const ECPoint> samples);
bool verify_relation(const IntPoly& h, const FrobeniusOp& op, std::span<const ResiduePoint> samples);

// lcm of (x - q) when the torus is nontrivial and the characteristic
// polynomials of the elliptic factors; annihilates F on all of G.
IntPoly minimal_poly_on_G(const GroupDescriptor& G, const BigInt& q);

// Points with both coordinates in F_p, in increasing x then y.
std::vector<ECPoint> rational_points(const CurveParams& curve, const TowerPtr& tower);

// Deterministic sample points built from `base`: small multiples, Frobenius
// images and translates by F_p-rational points.
std::vector<ECPoint> relation_samples(const ECPoint& base, const TowerPtr& tower, std::size_t count,
                                      std::uint64_t seed);

}  // namespace fsetkit
