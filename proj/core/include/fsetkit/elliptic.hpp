#pragma once

// Short Weierstrass curves y^2 = x^3 + a4 x + a6 over F_p, with the affine
// chord-tangent law on points whose coordinates lie in any extension field.

#include <optional>
#include <string>
#include <utility>

#include "fsetkit/exactfield.hpp"
#include "fsetkit/tower.hpp"

namespace fsetkit {

struct CurveParams {
  std::uint32_t p = 0;
  FpElem a4, a6;

  bool operator==(const CurveParams&) const = default;
  std::string to_string() const;
};

// Validates p and the discriminant -16(4 a4^3 + 27 a6^2) != 0.
CurveParams make_curve(std::uint32_t p, std::int64_t a4, std::int64_t a6);

template <CoefficientField F>
class BasicECPoint {
 public:
  static BasicECPoint infinity(const CurveParams& curve) { return BasicECPoint(curve); }

  // Throws ValidationError if (x, y) is not on the curve.
  static BasicECPoint affine(const CurveParams& curve, F x, F y) {
    BasicECPoint pt(curve, std::move(x), std::move(y));
    if (!pt.on_curve()) throw ValidationError("point is not on " + curve.to_string());
    return pt;
  }

  // No curve-equation check; for results of the group law.
  static BasicECPoint unchecked(const CurveParams& curve, F x, F y) {
    return BasicECPoint(curve, std::move(x), std::move(y));
  }

  const CurveParams& curve() const { return curve_; }
  bool is_infinity() const { return !xy_.has_value(); }
  const F& x() const { return xy_->first; }
  const F& y() const { return xy_->second; }

  bool on_curve() const {
    if (is_infinity()) return true;
    const F& x0 = x();
    const F rhs = x0 * x0 * x0 + x0 * x0.constant(curve_.a4.value()) + x0.constant(curve_.a6.value());
    return y() * y() == rhs;
  }

  bool operator==(const BasicECPoint& o) const { return curve_ == o.curve_ && xy_ == o.xy_; }

 private:
  explicit BasicECPoint(const CurveParams& curve) : curve_(curve) {}
  BasicECPoint(const CurveParams& curve, F x, F y) : curve_(curve), xy_(std::make_pair(std::move(x), std::move(y))) {}

  CurveParams curve_;
  std::optional<std::pair<F, F>> xy_;
};

using ECPoint = BasicECPoint<TowerElem>;
using ResiduePoint = BasicECPoint<ResidueElem>;

namespace detail {
// Compile-time switch for the curve-equation check after every group operation.
#ifdef FSETKIT_CHECKED_GROUP_LAW
inline constexpr bool kCheckGroupLaw = true;
#else
inline constexpr bool kCheckGroupLaw = false;
#endif

template <CoefficientField F>
BasicECPoint<F> checked(BasicECPoint<F> r) {
  if constexpr (kCheckGroupLaw) {
    if (!r.on_curve()) throw InternalError("group law produced a point off " + r.curve().to_string());
  }
  return r;
}
}  // namespace detail

template <CoefficientField F>
BasicECPoint<F> ec_neg(const BasicECPoint<F>& P) {
  if (P.is_infinity()) return P;
  return BasicECPoint<F>::unchecked(P.curve(), P.x(), -P.y());
}

template <CoefficientField F>
BasicECPoint<F> ec_add(const BasicECPoint<F>& P, const BasicECPoint<F>& Q) {
  if (!(P.curve() == Q.curve())) throw Mismatch("points on different curves");
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  const CurveParams& E = P.curve();
  F lambda = P.x();
  if (P.x() == Q.x()) {
    if (P.y() == -Q.y()) return BasicECPoint<F>::infinity(E);
    // Tangent: (3x^2 + a4) / 2y.
    const F x2 = P.x() * P.x();
    lambda = (x2 * x2.constant(3) + x2.constant(E.a4.value())) * (P.y() * P.y().constant(2)).inverse();
  } else {
    lambda = (Q.y() - P.y()) * (Q.x() - P.x()).inverse();
  }
  F x3 = lambda * lambda - P.x() - Q.x();
  F y3 = lambda * (P.x() - x3) - P.y();
  return detail::checked(BasicECPoint<F>::unchecked(E, std::move(x3), std::move(y3)));
}

template <CoefficientField F>
BasicECPoint<F> ec_sub(const BasicECPoint<F>& P, const BasicECPoint<F>& Q) {
  return ec_add(P, ec_neg(Q));
}

// Double-and-add from the top bit; negative n negates.
template <CoefficientField F>
BasicECPoint<F> ec_scalar_mul(const BigInt& n, const BasicECPoint<F>& P) {
  if (n < 0) return ec_neg(ec_scalar_mul(BigInt(-n), P));
  BasicECPoint<F> result = BasicECPoint<F>::infinity(P.curve());
  if (n == 0 || P.is_infinity()) return result;
  const std::size_t bits = boost::multiprecision::msb(n);
  for (std::size_t i = bits + 1; i-- > 0;) {
    result = ec_add(result, result);
    if (boost::multiprecision::bit_test(n, static_cast<unsigned>(i))) result = ec_add(result, P);
  }
  return result;
}

// (x, y) -> (x^p, y^p); the curve is defined over F_p so this stays on it.
template <CoefficientField F>
BasicECPoint<F> ec_frobenius(const BasicECPoint<F>& P) {
  if (P.is_infinity()) return P;
  return BasicECPoint<F>::unchecked(P.curve(), P.x().frobenius(), P.y().frobenius());
}

// Applies the p-power map `times` times.
template <CoefficientField F>
BasicECPoint<F> ec_frobenius(const BasicECPoint<F>& P, std::uint64_t times) {
  BasicECPoint<F> r = P;
  for (std::uint64_t i = 0; i < times; ++i) r = ec_frobenius(r);
  return r;
}

std::string to_string(const ECPoint& P);

// Image of a tower point at an inert place.
ResiduePoint reduce_at(const ECPoint& P, const InertPlace& place);

}  // namespace fsetkit
