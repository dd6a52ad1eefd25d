#include "fsetkit/elliptic.hpp"

namespace fsetkit {

std::string CurveParams::to_string() const {
  return "y^2 = x^3 + " + std::to_string(a4.value()) + "*x + " + std::to_string(a6.value()) + " over F_" +
         std::to_string(p);
}

CurveParams make_curve(std::uint32_t p, std::int64_t a4, std::int64_t a6) {
  require_supported_prime(p);
  CurveParams c{p, FpElem(p, a4), FpElem(p, a6)};
  const FpElem disc = FpElem(p, -16) * (FpElem(p, 4) * c.a4 * c.a4 * c.a4 + FpElem(p, 27) * c.a6 * c.a6);
  if (disc.is_zero()) throw InvalidArgument("singular curve: " + c.to_string());
  return c;
}

std::string to_string(const ECPoint& P) {
  if (P.is_infinity()) return "O";
  return "(" + to_string(P.x()) + ", " + to_string(P.y()) + ")";
}

ResiduePoint reduce_at(const ECPoint& P, const InertPlace& place) {
  if (P.is_infinity()) return ResiduePoint::infinity(P.curve());
  return ResiduePoint::unchecked(P.curve(), reduce_at(P.x(), place), reduce_at(P.y(), place));
}

}  // namespace fsetkit
