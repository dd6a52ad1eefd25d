#pragma once

// Exact coordinates for points of Z[F]-spans whose explicit coordinates are
// far too large to write down (F^12 of a point has x-degree 5^12).
//
// A torus coordinate is stored factored, unit * prod g^v over monic
// irreducibles g; the p-power map multiplies every v by p and fixes the unit.
// An elliptic coordinate is a combination c0 A + c1 phi(A) over registered
// atoms A, reduced with phi^2 = a phi - p. Equal coordinates always mean equal
// points. The converse holds when each curve carries a single nonconstant
// atom: such a point has infinite order, End(E) has no zero divisors, and so
// Z[phi] A is free on A, phi(A).

#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "fsetkit/factor.hpp"
#include "fsetkit/group.hpp"
#include "fsetkit/lattice.hpp"

namespace fsetkit {

using TorusCoord = RatFactors;

struct AtomCoord {
  BigInt c0, c1;

  bool is_zero() const { return c0 == 0 && c1 == 0; }
  bool operator==(const AtomCoord&) const = default;
};

// Atom index -> coefficients; zero entries are never stored.
struct EllipticCoord {
  std::map<std::size_t, AtomCoord> atoms;

  bool is_zero() const { return atoms.empty(); }
  bool operator==(const EllipticCoord&) const = default;
};

struct SpanPoint {
  GroupPtr group;
  std::vector<TorusCoord> torus;
  std::vector<EllipticCoord> elliptic;

  bool operator==(const SpanPoint& o) const {
    return same_group(group, o.group) && torus == o.torus && elliptic == o.elliptic;
  }
};

struct MaterializeBudget {
  // Bound on sum |v| deg g per torus coordinate.
  std::uint64_t torus_degree = 2'000'000;
  // Bound on |c0|, |c1| per elliptic atom.
  std::uint64_t elliptic_multiplier = 1024;
};

class SpanContext {
 public:
  // `curves` lists every curve that may occur; their traces are fixed here.
  SpanContext(TowerPtr tower, const std::vector<CurveParams>& curves);

  const TowerPtr& tower() const { return tower_; }
  std::uint32_t characteristic() const { return p_; }

  // Throws Unsupported for a torus coordinate outside F_p(t). Elliptic
  // coordinates produced by materialize_elliptic, or equal to +-A or
  // +-phi(A) for a known atom A, reuse those coordinates; anything else
  // becomes a new atom.
  SpanPoint lift(const ProductPoint& P);

  // Every curve has at most one atom, and that atom is nonconstant.
  bool canonical() const;
  std::size_t atom_count() const;
  ECPoint atom(std::size_t i) const;

  SpanPoint identity(const GroupPtr& group) const;
  SpanPoint add(const SpanPoint& a, const SpanPoint& b) const;
  SpanPoint neg(const SpanPoint& a) const;
  SpanPoint sub(const SpanPoint& a, const SpanPoint& b) const { return add(a, neg(b)); }
  SpanPoint scale(const BigInt& n, const SpanPoint& a) const;
  // The p-power map applied `steps` times.
  SpanPoint frobenius(const SpanPoint& a, std::uint64_t steps) const;
  SpanPoint apply(const GroupHom& h, const SpanPoint& a) const;

  TowerElem materialize_torus(const TorusCoord& c, const MaterializeBudget& budget = {}) const;
  ECPoint materialize_elliptic(const EllipticCoord& c, const CurveParams& curve,
                               const MaterializeBudget& budget = {}) const;
  ProductPoint materialize(const SpanPoint& a, const MaterializeBudget& budget = {}) const;

 private:
  struct Atom {
    CurveParams curve;
    ECPoint point;
    bool constant = false;
  };

  const BigInt& trace(const CurveParams& curve) const;
  AtomCoord atom_frobenius(const AtomCoord& c, const BigInt& a, std::uint64_t steps) const;
  EllipticCoord combine(const EllipticCoord& x, const BigInt& u, const EllipticCoord& y, const BigInt& v) const;

  TowerPtr tower_;
  std::uint32_t p_;
  std::vector<std::pair<CurveParams, BigInt>> traces_;
  mutable std::mutex mu_;
  std::deque<Atom> atoms_;
  // Expanded points remember their coordinates so that lift() returns them.
  mutable std::vector<std::pair<ECPoint, EllipticCoord>> expanded_;
  FactorCache factors_;
};

// Smallest primitive root of F_p and discrete logarithms to that base.
std::uint32_t primitive_root(std::uint32_t p);
std::uint64_t discrete_log(std::uint32_t p, std::uint32_t x);

// Some c with sum c_j gens_j = x, or empty when the coordinate system has no
// solution; that absence is a proof of non-membership when the context is
// canonical.
std::optional<IntVector> span_solve(const std::vector<SpanPoint>& gens, const SpanPoint& x);

}  // namespace fsetkit
