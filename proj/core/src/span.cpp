#include "fsetkit/span.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include "fsetkit/frobenius.hpp"

namespace fsetkit {

namespace {

void add_into(TorusCoord& acc, const TorusCoord& x, const BigInt& k, const Modulus& m) {
  for (const auto& [g, v] : x.valuations) {
    BigInt& slot = acc.valuations[g];
    slot += k * v;
    if (slot == 0) acc.valuations.erase(g);
  }
  // unit^k with k possibly negative.
  const std::uint32_t p = m.value();
  BigInt e = k % (p - 1);
  if (e < 0) e += p - 1;
  acc.unit = m.mul(acc.unit, m.pow(x.unit, static_cast<std::uint64_t>(e)));
}

}  // namespace

SpanContext::SpanContext(TowerPtr tower, const std::vector<CurveParams>& curves)
    : tower_(std::move(tower)), p_(tower_->d.characteristic()) {
  for (const auto& c : curves) {
    bool known = false;
    for (const auto& [k, a] : traces_) known = known || k == c;
    if (!known) traces_.emplace_back(c, frobenius_trace(c, p_));
  }
}

const BigInt& SpanContext::trace(const CurveParams& curve) const {
  for (const auto& [k, a] : traces_)
    if (k == curve) return a;
  throw Mismatch("curve not registered with the span context: " + curve.to_string());
}

SpanPoint SpanContext::lift(const ProductPoint& P) {
  SpanPoint out;
  out.group = P.group();
  for (const auto& c : P.torus().coords) {
    if (!c.in_base()) throw Unsupported("torus coordinate " + to_string(c) + " is not in F_p(t)");
    out.torus.push_back(factors_.factor(c.a()));
  }
  std::lock_guard lock(mu_);
  for (const auto& e : P.elliptic()) {
    EllipticCoord ec;
    if (!e.is_infinity()) {
      trace(e.curve());  // rejects unknown curves
      bool found = false;
      for (const auto& [pt, coord] : expanded_) {
        if (pt.curve() == e.curve() && pt == e) {
          ec = coord;
          found = true;
          break;
        }
      }
      for (std::size_t i = 0; i < atoms_.size() && !found; ++i) {
        if (!(atoms_[i].curve == e.curve())) continue;
        const ECPoint& A = atoms_[i].point;
        if (A == e) {
          ec.atoms[i] = {1, 0};
        } else if (ec_neg(A) == e) {
          ec.atoms[i] = {-1, 0};
        } else if (ec_frobenius(A) == e) {
          ec.atoms[i] = {0, 1};
        } else if (ec_neg(ec_frobenius(A)) == e) {
          ec.atoms[i] = {0, -1};
        } else {
          continue;
        }
        found = true;
      }
      if (!found) {
        const bool constant = tower_is_constant(e.x()) && tower_is_constant(e.y());
        atoms_.push_back(Atom{e.curve(), e, constant});
        ec.atoms[atoms_.size() - 1] = {1, 0};
      }
    }
    out.elliptic.push_back(std::move(ec));
  }
  return out;
}

bool SpanContext::canonical() const {
  std::lock_guard lock(mu_);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].constant) return false;
    for (std::size_t j = i + 1; j < atoms_.size(); ++j)
      if (atoms_[i].curve == atoms_[j].curve) return false;
  }
  return true;
}

std::size_t SpanContext::atom_count() const {
  std::lock_guard lock(mu_);
  return atoms_.size();
}

ECPoint SpanContext::atom(std::size_t i) const {
  std::lock_guard lock(mu_);
  return atoms_.at(i).point;
}

SpanPoint SpanContext::identity(const GroupPtr& group) const {
  SpanPoint out;
  out.group = group;
  out.torus.assign(group->torus_dim, TorusCoord{});
  out.elliptic.assign(group->curves.size(), EllipticCoord{});
  return out;
}

EllipticCoord SpanContext::combine(const EllipticCoord& x, const BigInt& u, const EllipticCoord& y,
                                   const BigInt& v) const {
  EllipticCoord out;
  for (const auto& [i, c] : x.atoms) out.atoms[i] = {u * c.c0, u * c.c1};
  for (const auto& [i, c] : y.atoms) {
    AtomCoord& slot = out.atoms[i];
    slot.c0 += v * c.c0;
    slot.c1 += v * c.c1;
  }
  std::erase_if(out.atoms, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

SpanPoint SpanContext::add(const SpanPoint& a, const SpanPoint& b) const {
  if (!same_group(a.group, b.group)) throw Mismatch("points of different groups");
  const Modulus m(p_);
  SpanPoint out = a;
  for (std::size_t i = 0; i < a.torus.size(); ++i) add_into(out.torus[i], b.torus[i], 1, m);
  for (std::size_t i = 0; i < a.elliptic.size(); ++i) out.elliptic[i] = combine(a.elliptic[i], 1, b.elliptic[i], 1);
  return out;
}

SpanPoint SpanContext::neg(const SpanPoint& a) const { return scale(-1, a); }

SpanPoint SpanContext::scale(const BigInt& n, const SpanPoint& a) const {
  const Modulus m(p_);
  SpanPoint out = identity(a.group);
  if (n == 0) return out;
  for (std::size_t i = 0; i < a.torus.size(); ++i) add_into(out.torus[i], a.torus[i], n, m);
  for (std::size_t i = 0; i < a.elliptic.size(); ++i) out.elliptic[i] = combine(a.elliptic[i], n, {}, 0);
  return out;
}

AtomCoord SpanContext::atom_frobenius(const AtomCoord& c, const BigInt& a, std::uint64_t steps) const {
  AtomCoord r = c;
  for (std::uint64_t s = 0; s < steps; ++s) {
    // (c0 + c1 phi) phi = -p c1 + (c0 + a c1) phi.
    BigInt c0 = -BigInt(p_) * r.c1;
    r.c1 = r.c0 + a * r.c1;
    r.c0 = std::move(c0);
  }
  return r;
}

SpanPoint SpanContext::frobenius(const SpanPoint& x, std::uint64_t steps) const {
  SpanPoint out = x;
  if (steps == 0) return out;
  const BigInt factor = boost::multiprecision::pow(BigInt(p_), static_cast<unsigned>(steps));
  for (auto& t : out.torus)
    for (auto& [g, v] : t.valuations) v *= factor;
  for (std::size_t i = 0; i < out.elliptic.size(); ++i) {
    const BigInt& a = trace(x.group->curves[i]);
    for (auto& [idx, c] : out.elliptic[i].atoms) c = atom_frobenius(c, a, steps);
  }
  return out;
}

SpanPoint SpanContext::apply(const GroupHom& h, const SpanPoint& x) const {
  if (!same_group(x.group, h.source())) throw Mismatch("point is not in the source group of the homomorphism");
  const Modulus m(p_);
  SpanPoint out = identity(h.target());
  for (std::size_t i = 0; i < h.torus_matrix().size(); ++i)
    for (std::size_t j = 0; j < x.torus.size(); ++j)
      if (h.torus_matrix()[i][j] != 0) add_into(out.torus[i], x.torus[j], h.torus_matrix()[i][j], m);
  unsigned k = 0;
  is_power_of(h.source()->q, p_, &k);
  for (std::size_t i = 0; i < h.elliptic_matrix().size(); ++i) {
    for (std::size_t j = 0; j < x.elliptic.size(); ++j) {
      const EndoEntry& e = h.elliptic_matrix()[i][j];
      if (e.is_zero()) continue;
      const BigInt& a = trace(x.group->curves[j]);
      EllipticCoord fx;
      for (const auto& [idx, c] : x.elliptic[j].atoms) fx.atoms[idx] = atom_frobenius(c, a, k);
      out.elliptic[i] = combine(out.elliptic[i], 1, combine(x.elliptic[j], e.u, fx, e.v), 1);
    }
  }
  return out;
}

TowerElem SpanContext::materialize_torus(const TorusCoord& c, const MaterializeBudget& budget) const {
  BigInt size = 0;
  for (const auto& [g, v] : c.valuations) size += abs(v) * g.degree();
  if (size > budget.torus_degree) throw ResourceLimit("torus coordinate of degree " + size.str() + " is too large to expand");
  Poly num = Poly::constant(p_, c.unit), den = Poly::constant(p_, 1);
  for (const auto& [g, v] : c.valuations) {
    if (v > 0) num *= g.pow(static_cast<std::uint64_t>(v));
    else den *= g.pow(static_cast<std::uint64_t>(-v));
  }
  return tower_from(tower_, RatFunc(std::move(num), std::move(den)));
}

ECPoint SpanContext::materialize_elliptic(const EllipticCoord& c, const CurveParams& curve,
                                          const MaterializeBudget& budget) const {
  ECPoint acc = ECPoint::infinity(curve);
  for (const auto& [idx, ac] : c.atoms) {
    if (abs(ac.c0) > budget.elliptic_multiplier || abs(ac.c1) > budget.elliptic_multiplier) {
      throw ResourceLimit("elliptic multiplier too large to expand");
    }
    const ECPoint A = atom(idx);
    if (!(A.curve() == curve)) throw Mismatch("atom on a different curve");
    acc = ec_add(acc, ec_add(ec_scalar_mul(ac.c0, A), ec_scalar_mul(ac.c1, ec_frobenius(A))));
  }
  if (!acc.is_infinity()) {
    std::lock_guard lock(mu_);
    bool known = false;
    for (const auto& [pt, coord] : expanded_) known = known || coord == c;
    if (!known) expanded_.emplace_back(acc, c);
  }
  return acc;
}

ProductPoint SpanContext::materialize(const SpanPoint& x, const MaterializeBudget& budget) const {
  std::vector<TowerElem> torus;
  for (const auto& c : x.torus) torus.push_back(materialize_torus(c, budget));
  std::vector<ECPoint> elliptic;
  for (std::size_t i = 0; i < x.elliptic.size(); ++i)
    elliptic.push_back(materialize_elliptic(x.elliptic[i], x.group->curves[i], budget));
  return ProductPoint::unchecked(x.group, std::move(torus), std::move(elliptic));
}

std::uint32_t primitive_root(std::uint32_t p) {
  std::vector<std::uint32_t> primes;
  std::uint32_t n = p - 1;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      primes.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) primes.push_back(n);
  const Modulus m(p);
  for (std::uint32_t g = 1; g < p; ++g) {
    bool ok = true;
    for (std::uint32_t r : primes) ok = ok && m.pow(g, (p - 1) / r) != 1;
    if (ok) return g;
  }
  throw InternalError("no primitive root modulo " + std::to_string(p));
}

std::uint64_t discrete_log(std::uint32_t p, std::uint32_t x) {
  if (x % p == 0) throw DivisionByZero("discrete log of zero");
  const Modulus m(p);
  const std::uint32_t g = primitive_root(p);
  // Baby-step giant-step.
  const auto step = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(p - 1))));
  std::unordered_map<std::uint32_t, std::uint32_t> baby;
  std::uint32_t cur = 1;
  for (std::uint32_t j = 0; j < step; ++j) {
    baby.emplace(cur, j);
    cur = m.mul(cur, g);
  }
  const std::uint32_t giant = m.inv(m.pow(g, step));
  cur = x % p;
  for (std::uint32_t i = 0; i <= step; ++i) {
    if (auto it = baby.find(cur); it != baby.end()) return (static_cast<std::uint64_t>(i) * step + it->second) % (p - 1);
    cur = m.mul(cur, giant);
  }
  throw InternalError("discrete log not found");
}

std::optional<IntVector> span_solve(const std::vector<SpanPoint>& gens, const SpanPoint& x) {
  for (const auto& g : gens)
    if (!same_group(g.group, x.group)) throw Mismatch("generator outside the ambient group");
  const std::uint32_t p = x.group->p;
  const std::size_t r = gens.size();
  const std::size_t T = x.torus.size();
  const std::size_t cols = r + T;
  IntMatrix A;
  IntVector b;

  for (std::size_t i = 0; i < T; ++i) {
    std::set<Poly> support;
    for (const auto& [g, v] : x.torus[i].valuations) support.insert(g);
    for (const auto& gen : gens)
      for (const auto& [g, v] : gen.torus[i].valuations) support.insert(g);
    auto val = [](const TorusCoord& c, const Poly& g) {
      auto it = c.valuations.find(g);
      return it == c.valuations.end() ? BigInt(0) : it->second;
    };
    for (const Poly& g : support) {
      IntVector row(cols, 0);
      for (std::size_t j = 0; j < r; ++j) row[j] = val(gens[j].torus[i], g);
      A.push_back(std::move(row));
      b.push_back(val(x.torus[i], g));
    }
    IntVector row(cols, 0);
    for (std::size_t j = 0; j < r; ++j) row[j] = discrete_log(p, gens[j].torus[i].unit);
    row[r + i] = -BigInt(p - 1);
    A.push_back(std::move(row));
    b.push_back(discrete_log(p, x.torus[i].unit));
  }

  for (std::size_t i = 0; i < x.elliptic.size(); ++i) {
    std::set<std::size_t> support;
    for (const auto& [idx, c] : x.elliptic[i].atoms) support.insert(idx);
    for (const auto& gen : gens)
      for (const auto& [idx, c] : gen.elliptic[i].atoms) support.insert(idx);
    auto coord = [](const EllipticCoord& e, std::size_t idx) {
      auto it = e.atoms.find(idx);
      return it == e.atoms.end() ? AtomCoord{0, 0} : it->second;
    };
    for (std::size_t idx : support) {
      IntVector r0(cols, 0), r1(cols, 0);
      for (std::size_t j = 0; j < r; ++j) {
        const AtomCoord c = coord(gens[j].elliptic[i], idx);
        r0[j] = c.c0;
        r1[j] = c.c1;
      }
      const AtomCoord cx = coord(x.elliptic[i], idx);
      A.push_back(std::move(r0));
      b.push_back(cx.c0);
      A.push_back(std::move(r1));
      b.push_back(cx.c1);
    }
  }

  if (A.empty()) return IntVector(r, 0);
  auto sol = solve_integer(A, cols, b);
  if (!sol) return std::nullopt;
  sol->resize(r);
  return sol;
}

}  // namespace fsetkit
