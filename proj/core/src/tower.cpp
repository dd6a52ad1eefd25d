#include "fsetkit/tower.hpp"

#include "fsetkit/expr.hpp"

namespace fsetkit {

TowerPtr make_tower(const Poly& d) {
  require_supported_prime(d.characteristic());
  if (d.degree() < 1) throw InvalidArgument("tower modulus must be nonconstant: " + d.to_string());
  if (!is_squarefree(d)) throw InvalidArgument("tower modulus must be squarefree: " + d.to_string());
  const std::uint32_t p = d.characteristic();
  const RatFunc dr(d);
  return std::make_shared<const TowerField>(dr, dr.pow(BigInt((p - 1) / 2)));
}

TowerElem tower_constant(const TowerPtr& tower, std::int64_t c) {
  return TowerElem(tower, RatFunc::constant(tower->d.characteristic(), c));
}

TowerElem tower_t(const TowerPtr& tower) { return TowerElem(tower, RatFunc(Poly::t(tower->d.characteristic()))); }

TowerElem tower_s(const TowerPtr& tower) {
  const std::uint32_t p = tower->d.characteristic();
  return TowerElem(tower, RatFunc::constant(p, 0), RatFunc::constant(p, 1));
}

TowerElem tower_from(const TowerPtr& tower, const RatFunc& a, const RatFunc& b) { return TowerElem(tower, a, b); }
TowerElem tower_from(const TowerPtr& tower, const RatFunc& a) { return TowerElem(tower, a); }

TowerElem qth_power(const TowerElem& x, const BigInt& q) {
  unsigned k = 0;
  if (!is_power_of(q, x.characteristic(), &k)) {
    throw InvalidArgument("q = " + q.str() + " is not a positive power of p = " + std::to_string(x.characteristic()));
  }
  TowerElem r = x;
  for (unsigned i = 0; i < k; ++i) r = r.frobenius();
  return r;
}

long tower_height(const TowerElem& x) { return std::max(x.a().height(), x.b().height()); }

bool tower_is_constant(const TowerElem& x) { return x.a().is_constant() && x.b().is_zero(); }

std::string to_string(const TowerElem& x) {
  if (x.b().is_zero()) return x.a().to_string();
  const std::string b = x.b().is_one() ? "s" : "(" + x.b().to_string() + ")*s";
  if (x.a().is_zero()) return b;
  return x.a().to_string() + " + " + b;
}

namespace {

template <class V>
struct FieldAlgebraBase {
  using Value = V;
  Value add(const Value& a, const Value& b) { return a + b; }
  Value sub(const Value& a, const Value& b) { return a - b; }
  Value mul(const Value& a, const Value& b) { return a * b; }
  Value div(const Value& a, const Value& b) { return a * b.inverse(); }
  Value neg(const Value& a) { return -a; }
  Value power(const Value& a, std::int64_t k) { return a.pow(BigInt(k)); }
};

struct TowerAlgebra : FieldAlgebraBase<TowerElem> {
  TowerPtr tower;
  std::uint32_t p;

  Value constant(const BigInt& n) {
    return tower_constant(tower, static_cast<std::int64_t>(n % p));
  }
  Value variable(std::string_view name) {
    if (name == "t") return tower_t(tower);
    if (name == "s") return tower_s(tower);
    throw ParseError("unknown variable '" + std::string(name) + "' (expected t or s)");
  }
};

struct RatFuncAlgebra : FieldAlgebraBase<RatFunc> {
  std::uint32_t p;

  Value constant(const BigInt& n) { return RatFunc::constant(p, static_cast<std::int64_t>(n % p)); }
  Value variable(std::string_view name) {
    if (name == "t") return RatFunc(Poly::t(p));
    throw ParseError("unknown variable '" + std::string(name) + "' (expected t)");
  }
};

}  // namespace

TowerElem parse_tower(const TowerPtr& tower, std::string_view text) {
  TowerAlgebra alg;
  alg.tower = tower;
  alg.p = tower->d.characteristic();
  try {
    return parse_expression(text, alg);
  } catch (const DivisionByZero& e) {
    throw ParseError("division by zero in \"" + std::string(text) + "\"");
  }
}

RatFunc parse_ratfunc(std::uint32_t p, std::string_view text) {
  RatFuncAlgebra alg;
  alg.p = p;
  try {
    return parse_expression(text, alg);
  } catch (const DivisionByZero& e) {
    throw ParseError("division by zero in \"" + std::string(text) + "\"");
  }
}

Poly parse_poly(std::uint32_t p, std::string_view text) {
  const RatFunc r = parse_ratfunc(p, text);
  if (!r.is_polynomial()) throw ParseError("expected a polynomial in t: \"" + std::string(text) + "\"");
  return r.num();
}

// ---------------------------------------------------------------- places

std::optional<InertPlace> make_inert_place(const TowerPtr& tower, const Poly& g) {
  auto base = std::make_shared<const GaloisField>(g.monic());
  const GaloisElem dbar(base, tower->d.num());
  if (dbar.is_zero() || dbar.is_square()) return std::nullopt;
  const std::uint32_t p = g.characteristic();
  auto field = std::make_shared<const ResidueField>(dbar, dbar.pow(BigInt((p - 1) / 2)));
  return InertPlace{g.monic(), std::move(base), std::move(field)};
}

std::vector<InertPlace> inert_places(const TowerPtr& tower, std::size_t degree, std::size_t count) {
  std::vector<InertPlace> out;
  if (count == 0) return out;
  visit_monic_irreducibles(tower->d.characteristic(), degree, [&](const Poly& g) {
    if (auto place = make_inert_place(tower, g)) out.push_back(std::move(*place));
    return out.size() < count;
  });
  return out;
}

namespace {

GaloisElem reduce_ratfunc(const RatFunc& r, const std::shared_ptr<const GaloisField>& base) {
  const GaloisElem den(base, r.den());
  if (den.is_zero()) throw DivisionByZero("denominator vanishes at place " + base->modulus().to_string());
  return GaloisElem(base, r.num()) * den.inverse();
}

}  // namespace

ResidueElem reduce_at(const TowerElem& x, const InertPlace& place) {
  return ResidueElem(place.field, reduce_ratfunc(x.a(), place.base), reduce_ratfunc(x.b(), place.base));
}

}  // namespace fsetkit
