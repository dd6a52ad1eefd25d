#pragma once

// The coordinate field L = F_p(t)[s]/(s^2 - d(t)) shared by every point of a
// scenario, and reduction of L modulo inert places.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fsetkit/exactfield.hpp"
#include "fsetkit/galois.hpp"
#include "fsetkit/quadratic.hpp"

namespace fsetkit {

using TowerField = QuadraticField<RatFunc>;
using TowerPtr = std::shared_ptr<const TowerField>;
using TowerElem = QuadraticElem<RatFunc>;

// Validates d (nonconstant, squarefree, supported characteristic).
TowerPtr make_tower(const Poly& d);

TowerElem tower_constant(const TowerPtr& tower, std::int64_t c);
TowerElem tower_t(const TowerPtr& tower);
TowerElem tower_s(const TowerPtr& tower);
TowerElem tower_from(const TowerPtr& tower, const RatFunc& a, const RatFunc& b);
TowerElem tower_from(const TowerPtr& tower, const RatFunc& a);

inline TowerElem tower_mul(const TowerElem& x, const TowerElem& y) { return x * y; }
inline TowerElem tower_inv(const TowerElem& x) { return x.inverse(); }

// x^q for q = p^k, k >= 1, via k applications of the p-th power map.
TowerElem qth_power(const TowerElem& x, const BigInt& q);

// max height over both components.
long tower_height(const TowerElem& x);

// True iff both components are constants of F_p.
bool tower_is_constant(const TowerElem& x);

// "A", "(B)*s" or "A + (B)*s" where A, B print as RatFunc.
std::string to_string(const TowerElem& x);

// Expressions in t, s and integers with + - * / ^ and parentheses.
TowerElem parse_tower(const TowerPtr& tower, std::string_view text);
RatFunc parse_ratfunc(std::uint32_t p, std::string_view text);
Poly parse_poly(std::uint32_t p, std::string_view text);

// ---- reduction at places

using ResidueField = QuadraticField<GaloisElem>;
using ResidueElem = QuadraticElem<GaloisElem>;

// A place of F_p(t) given by a monic irreducible g at which d is a nonzero
// non-square; L then reduces onto F_{p^{2 deg g}}.
struct InertPlace {
  Poly g;
  std::shared_ptr<const GaloisField> base;
  std::shared_ptr<const ResidueField> field;
};

// Empty when d vanishes or is a square modulo g.
std::optional<InertPlace> make_inert_place(const TowerPtr& tower, const Poly& g);

// The first `count` inert places of the given degree, in Poly order.
std::vector<InertPlace> inert_places(const TowerPtr& tower, std::size_t degree, std::size_t count);

// Throws DivisionByZero if a denominator vanishes at the place.
ResidueElem reduce_at(const TowerElem& x, const InertPlace& place);

}  // namespace fsetkit
