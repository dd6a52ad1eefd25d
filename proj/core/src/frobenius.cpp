#include "fsetkit/frobenius.hpp"

#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsetkit/galois.hpp"

namespace fsetkit {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using RatPoly = std::vector<Rational>;

void trim(RatPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

RatPoly rat_mod(RatPoly a, const RatPoly& b) {
  trim(a);
  while (a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

RatPoly to_rat(const IntPoly& f) { return RatPoly(f.coeffs().begin(), f.coeffs().end()); }

IntPoly from_monic_rat(RatPoly f) {
  trim(f);
  const Rational lead = f.back();
  std::vector<BigInt> c;
  for (auto& x : f) {
    x /= lead;
    if (boost::multiprecision::denominator(x) != 1) throw InternalError("non-integral factor of a monic integer polynomial");
    c.push_back(boost::multiprecision::numerator(x));
  }
  return IntPoly(std::move(c));
}

// y^2 = rhs(x) over F_p via a square table.
BigInt count_prime_field(const CurveParams& E) {
  const std::uint32_t p = E.p;
  const Modulus m(p);
  std::vector<std::uint8_t> is_sq(p, 0);
  for (std::uint32_t y = 0; y < p; ++y) is_sq[m.mul(y, y)] = 1;
  BigInt n = 1;
  for (std::uint32_t x = 0; x < p; ++x) {
    const std::uint32_t rhs = m.add(m.add(m.mul(m.mul(x, x), x), m.mul(E.a4.value(), x)), E.a6.value());
    n += rhs == 0 ? 1 : (is_sq[rhs] ? 2 : 0);
  }
  return n;
}

BigInt count_extension(const CurveParams& E, unsigned k) {
  const std::uint32_t p = E.p;
  auto field = std::make_shared<const GaloisField>(first_irreducible(p, k));
  const auto q = static_cast<std::uint64_t>(field->order());
  std::vector<std::uint32_t> digits(k);
  auto element = [&](std::uint64_t idx) {
    for (unsigned i = 0; i < k; ++i) {
      digits[i] = static_cast<std::uint32_t>(idx % p);
      idx /= p;
    }
    return GaloisElem(field, Poly(p, digits));
  };
  std::vector<std::uint8_t> is_sq(q, 0);
  for (std::uint64_t i = 0; i < q; ++i) {
    const GaloisElem z = element(i);
    is_sq[(z * z).index()] = 1;
  }
  const GaloisElem a4 = element(0).constant(E.a4.value());
  const GaloisElem a6 = element(0).constant(E.a6.value());
  BigInt n = 1;
  for (std::uint64_t i = 0; i < q; ++i) {
    const GaloisElem x = element(i);
    const GaloisElem rhs = x * x * x + a4 * x + a6;
    n += rhs.is_zero() ? 1 : (is_sq[rhs.index()] ? 2 : 0);
  }
  return n;
}

}  // namespace

FrobeniusOp::FrobeniusOp(std::uint32_t p, const BigInt& q) : p_(p), q_(q) {
  require_supported_prime(p);
  if (!is_power_of(q, p, &k_)) throw InvalidArgument("q = " + q.str() + " is not a power of " + std::to_string(p));
}

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
  if (c_.size() < 2 || c_.back() != 1) throw InvalidArgument("relation polynomial must be monic of degree >= 1");
}

IntPoly IntPoly::from_ints(std::initializer_list<long long> coeffs) {
  std::vector<BigInt> c;
  for (long long x : coeffs) c.emplace_back(x);
  return IntPoly(std::move(c));
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::string IntPoly::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ", ";
    out += c_[i].str();
  }
  return out + "]";
}

IntPoly intpoly_mul(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> c(a.degree() + b.degree() + 1, 0);
  for (std::size_t i = 0; i <= a.degree(); ++i)
    for (std::size_t j = 0; j <= b.degree(); ++j) c[i + j] += a.coeff(i) * b.coeff(j);
  return IntPoly(std::move(c));
}

std::optional<IntPoly> intpoly_gcd(const IntPoly& a, const IntPoly& b) {
  RatPoly x = to_rat(a), y = to_rat(b);
  while (!y.empty()) {
    RatPoly r = rat_mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.size() < 2) return std::nullopt;
  return from_monic_rat(std::move(x));
}

IntPoly intpoly_lcm(const IntPoly& a, const IntPoly& b) {
  const auto g = intpoly_gcd(a, b);
  const IntPoly ab = intpoly_mul(a, b);
  if (!g) return ab;
  // ab / g by long division; exact over Z since g is monic.
  std::vector<BigInt> rem = ab.coeffs();
  std::vector<BigInt> quo(ab.degree() - g->degree() + 1, 0);
  for (std::size_t i = quo.size(); i-- > 0;) {
    quo[i] = rem[i + g->degree()];
    for (std::size_t j = 0; j <= g->degree(); ++j) rem[i + j] -= quo[i] * g->coeff(j);
  }
  return IntPoly(std::move(quo));
}

ECPoint frob_apply(const FrobeniusOp& op, const ECPoint& P, std::uint64_t iterations) {
  return ec_frobenius(P, op.p_steps() * iterations);
}

ResiduePoint frob_apply(const FrobeniusOp& op, const ResiduePoint& P, std::uint64_t iterations) {
  return ec_frobenius(P, op.p_steps() * iterations);
}

ProductPoint frob_apply(const FrobeniusOp& op, const ProductPoint& P, std::uint64_t iterations) {
  if (iterations == 0) return P;
  const std::uint64_t steps = op.p_steps() * iterations;
  std::vector<TowerElem> torus;
  for (const auto& c : P.torus().coords) {
    TowerElem x = c;
    for (std::uint64_t i = 0; i < steps; ++i) x = x.frobenius();
    torus.push_back(std::move(x));
  }
  std::vector<ECPoint> elliptic;
  for (const auto& e : P.elliptic()) elliptic.push_back(ec_frobenius(e, steps));
  return ProductPoint::unchecked(P.group(), std::move(torus), std::move(elliptic));
}

BigInt count_points(const CurveParams& curve, const BigInt& q) {
  unsigned k = 0;
  if (!is_power_of(q, curve.p, &k)) throw InvalidArgument("q = " + q.str() + " is not a power of " + std::to_string(curve.p));
  if (q > kMaxCountableQ) throw ResourceLimit("point count over F_" + q.str() + " exceeds the enumeration limit");
  return k == 1 ? count_prime_field(curve) : count_extension(curve, k);
}

IntPoly char_poly_frobenius(const CurveParams& curve, const BigInt& q) {
  const BigInt a = q + 1 - count_points(curve, q);
  if (a * a > 4 * q) throw InternalError("Hasse bound violated: a = " + a.str() + ", q = " + q.str());
  return IntPoly({q, BigInt(-a), BigInt(1)});
}

BigInt frobenius_trace(const CurveParams& curve, const BigInt& q) {
  unsigned k = 0;
  if (!is_power_of(q, curve.p, &k)) throw InvalidArgument("q = " + q.str() + " is not a power of " + std::to_string(curve.p));
  const BigInt p = curve.p;
  const BigInt a1 = p + 1 - count_prime_field(curve);
  BigInt prev = 2, cur = a1;
  for (unsigned i = 1; i < k; ++i) {
    BigInt next = a1 * cur - p * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

bool verify_relation(const IntPoly& h, const FrobeniusOp& op, std::span<const ECPoint> samples) {
  for (const auto& P : samples) {
    if (!apply_relation(h, op, P).is_infinity()) return false;
  }
  return true;
}

bool verify_relation(const IntPoly& h, const FrobeniusOp& op, std::span<const ResiduePoint> samples) {
  for (const auto& P : samples) {
    if (!apply_relation(h, op, P).is_infinity()) return false;
  }
  return true;
}

IntPoly minimal_poly_on_G(const GroupDescriptor& G, const BigInt& q) {
  std::optional<IntPoly> acc;
  if (G.torus_dim > 0) acc = IntPoly({BigInt(-q), BigInt(1)});
  for (const auto& c : G.curves) {
    const IntPoly f = char_poly_frobenius(c, q);
    acc = acc ? intpoly_lcm(*acc, f) : f;
  }
  if (!acc) throw InvalidArgument("trivial ambient group");
  return *acc;
}

std::vector<ECPoint> rational_points(const CurveParams& curve, const TowerPtr& tower) {
  const std::uint32_t p = curve.p;
  const Modulus m(p);
  std::vector<ECPoint> out;
  for (std::uint32_t x = 0; x < p; ++x) {
    const std::uint32_t rhs = m.add(m.add(m.mul(m.mul(x, x), x), m.mul(curve.a4.value(), x)), curve.a6.value());
    for (std::uint32_t y = 0; y < p; ++y) {
      if (m.mul(y, y) == rhs) out.push_back(ECPoint::affine(curve, tower_constant(tower, x), tower_constant(tower, y)));
    }
  }
  return out;
}

std::vector<ECPoint> relation_samples(const ECPoint& base, const TowerPtr& tower, std::size_t count,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<ECPoint> rational = rational_points(base.curve(), tower);
  const ECPoint frob = ec_frobenius(base);
  std::vector<ECPoint> out;
  out.push_back(base);
  while (out.size() < count) {
    const int m = static_cast<int>(rng() % 4);  // multiplier in {-2, -1, 1, 2}
    const BigInt mult = m < 2 ? BigInt(m - 2) : BigInt(m - 1);
    ECPoint P = ec_scalar_mul(mult, rng() % 2 ? frob : base);
    if (!rational.empty() && rng() % 2) P = ec_add(P, rational[rng() % rational.size()]);
    out.push_back(std::move(P));
  }
  return out;
}

}  // namespace fsetkit
