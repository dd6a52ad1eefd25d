#include "fsetkit/group.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsetkit/frobenius.hpp"

namespace fsetkit {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Elements x + yF of Q(F) with F^2 = aF - q. When a^2 = 4q the relation has a
// double root and F acts as the integer a/2, so y is folded into x.
struct QF {
  Rational x, y;
};

class QFArith {
 public:
  QFArith(BigInt a, BigInt q) : a_(std::move(a)), q_(std::move(q)), split_(a_ * a_ == 4 * q_) {}

  QF make(const EndoEntry& e) const {
    if (split_) return {Rational(e.u) + Rational(e.v) * Rational(a_, 2), 0};
    return {Rational(e.u), Rational(e.v)};
  }
  bool is_zero(const QF& z) const { return z.x == 0 && z.y == 0; }
  QF sub(const QF& l, const QF& r) const { return {l.x - r.x, l.y - r.y}; }
  QF mul(const QF& l, const QF& r) const {
    const Rational yy = l.y * r.y;
    return {l.x * r.x - Rational(q_) * yy, l.x * r.y + l.y * r.x + Rational(a_) * yy};
  }
  // (x + yF)^-1 = ((x + a y) - y F) / (x^2 + a x y + q y^2).
  QF inv(const QF& z) const {
    const Rational n = z.x * z.x + Rational(a_) * z.x * z.y + Rational(q_) * z.y * z.y;
    if (n == 0) throw InternalError("zero norm in Q(F)");
    return {(z.x + Rational(a_) * z.y) / n, -z.y / n};
  }

 private:
  BigInt a_, q_;
  bool split_;
};

std::size_t qf_rank(std::vector<std::vector<QF>> m, const QFArith& k) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && k.is_zero(m[piv][c])) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const QF inv = k.inv(m[rank][c]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (k.is_zero(m[r][c])) continue;
      const QF f = k.mul(m[r][c], inv);
      for (std::size_t j = c; j < cols; ++j) m[r][j] = k.sub(m[r][j], k.mul(f, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

// Rank of the elliptic block over Q(F), computed per isomorphism class of
// curve since entries only connect equal curves.
std::size_t elliptic_rank(const GroupDescriptor& src, const GroupDescriptor& dst, const EndoMatrix& m) {
  std::vector<CurveParams> classes;
  for (const auto& c : src.curves) {
    if (std::find(classes.begin(), classes.end(), c) == classes.end()) classes.push_back(c);
  }
  std::size_t total = 0;
  for (const auto& curve : classes) {
    const QFArith k(frobenius_trace(curve, src.q), src.q);
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < dst.curves.size(); ++i)
      if (dst.curves[i] == curve) rows.push_back(i);
    for (std::size_t j = 0; j < src.curves.size(); ++j)
      if (src.curves[j] == curve) cols.push_back(j);
    std::vector<std::vector<QF>> sub(rows.size(), std::vector<QF>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) sub[r][c] = k.make(m[rows[r]][cols[c]]);
    total += qf_rank(std::move(sub), k);
  }
  return total;
}

void require_same(const GroupPtr& a, const GroupPtr& b) {
  if (!same_group(a, b)) throw Mismatch("points of different groups");
}

}  // namespace

bool GroupDescriptor::operator==(const GroupDescriptor& o) const {
  return p == o.p && q == o.q && torus_dim == o.torus_dim && curves == o.curves &&
         (tower == o.tower || (tower && o.tower && *tower == *o.tower));
}

std::string GroupDescriptor::to_string() const {
  std::string out = "G_m^" + std::to_string(torus_dim);
  for (const auto& c : curves) out += " x E(" + std::to_string(c.a4.value()) + "," + std::to_string(c.a6.value()) + ")";
  out += " over F_" + q.str();
  return out;
}

GroupPtr make_group(TowerPtr tower, const BigInt& q, std::size_t torus_dim, std::vector<CurveParams> curves) {
  if (!tower) throw InvalidArgument("group without a coordinate field");
  const std::uint32_t p = tower->d.characteristic();
  if (!is_power_of(q, p)) throw InvalidArgument("q = " + q.str() + " is not a power of " + std::to_string(p));
  for (const auto& c : curves) {
    if (c.p != p) throw InvalidArgument("curve characteristic differs from the tower");
  }
  if (torus_dim == 0 && curves.empty()) throw InvalidArgument("trivial ambient group");
  auto g = std::make_shared<GroupDescriptor>();
  g->p = p;
  g->q = q;
  g->torus_dim = torus_dim;
  g->curves = std::move(curves);
  g->tower = std::move(tower);
  return g;
}

bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || (a && b && *a == *b); }

ProductPoint ProductPoint::make(GroupPtr group, std::vector<TowerElem> torus, std::vector<ECPoint> elliptic) {
  if (!group) throw InvalidArgument("point without a group");
  if (torus.size() != group->torus_dim) {
    throw ValidationError("expected " + std::to_string(group->torus_dim) + " torus coordinates, got " +
                          std::to_string(torus.size()));
  }
  if (elliptic.size() != group->curves.size()) {
    throw ValidationError("expected " + std::to_string(group->curves.size()) + " elliptic coordinates, got " +
                          std::to_string(elliptic.size()));
  }
  for (const auto& c : torus) {
    if (c.is_zero()) throw ValidationError("torus coordinate is zero");
    if (!(*c.field() == *group->tower)) throw ValidationError("torus coordinate outside the coordinate field");
  }
  for (std::size_t i = 0; i < elliptic.size(); ++i) {
    const ECPoint& P = elliptic[i];
    if (!(P.curve() == group->curves[i])) throw ValidationError("elliptic coordinate on the wrong curve");
    if (!P.is_infinity() && !(*P.x().field() == *group->tower && *P.y().field() == *group->tower)) {
      throw ValidationError("elliptic coordinate outside the coordinate field");
    }
    if (!P.on_curve()) throw ValidationError("point is not on " + P.curve().to_string());
  }
  return unchecked(std::move(group), std::move(torus), std::move(elliptic));
}

ProductPoint ProductPoint::identity(GroupPtr group) {
  std::vector<TowerElem> torus(group->torus_dim, tower_constant(group->tower, 1));
  std::vector<ECPoint> elliptic;
  for (const auto& c : group->curves) elliptic.push_back(ECPoint::infinity(c));
  return unchecked(std::move(group), std::move(torus), std::move(elliptic));
}

ProductPoint ProductPoint::unchecked(GroupPtr group, std::vector<TowerElem> torus, std::vector<ECPoint> elliptic) {
  ProductPoint P;
  P.group_ = std::move(group);
  P.torus_.coords = std::move(torus);
  P.elliptic_ = std::move(elliptic);
  return P;
}

bool ProductPoint::is_identity() const {
  for (const auto& c : torus_.coords)
    if (!(c.in_base() && c.a().is_one())) return false;
  for (const auto& e : elliptic_)
    if (!e.is_infinity()) return false;
  return true;
}

bool ProductPoint::operator==(const ProductPoint& o) const {
  return same_group(group_, o.group_) && torus_ == o.torus_ && elliptic_ == o.elliptic_;
}

ProductPoint prod_add(const ProductPoint& P, const ProductPoint& Q) {
  require_same(P.group(), Q.group());
  std::vector<ECPoint> e;
  e.reserve(P.elliptic().size());
  for (std::size_t i = 0; i < P.elliptic().size(); ++i) e.push_back(ec_add(P.elliptic()[i], Q.elliptic()[i]));
  return ProductPoint::unchecked(P.group(), torus_mul(P.torus(), Q.torus()).coords, std::move(e));
}

ProductPoint prod_neg(const ProductPoint& P) {
  std::vector<TowerElem> t;
  for (const auto& c : P.torus().coords) t.push_back(c.inverse());
  std::vector<ECPoint> e;
  for (const auto& x : P.elliptic()) e.push_back(ec_neg(x));
  return ProductPoint::unchecked(P.group(), std::move(t), std::move(e));
}

ProductPoint prod_sub(const ProductPoint& P, const ProductPoint& Q) { return prod_add(P, prod_neg(Q)); }

ProductPoint prod_scale(const BigInt& n, const ProductPoint& P) {
  std::vector<ECPoint> e;
  for (const auto& x : P.elliptic()) e.push_back(ec_scalar_mul(n, x));
  return ProductPoint::unchecked(P.group(), torus_pow(P.torus(), n).coords, std::move(e));
}

TorusPoint torus_mul(const TorusPoint& a, const TorusPoint& b) {
  if (a.coords.size() != b.coords.size()) throw Mismatch("torus blocks of different dimension");
  TorusPoint r;
  r.coords.reserve(a.coords.size());
  for (std::size_t i = 0; i < a.coords.size(); ++i) r.coords.push_back(a.coords[i] * b.coords[i]);
  return r;
}

TorusPoint torus_pow(const TorusPoint& a, const BigInt& n) {
  TorusPoint r;
  for (const auto& c : a.coords) r.coords.push_back(c.pow(n));
  return r;
}

std::string to_string(const ProductPoint& P) {
  std::string out = "(";
  for (std::size_t i = 0; i < P.torus().coords.size(); ++i) {
    if (i) out += ", ";
    out += to_string(P.torus().coords[i]);
  }
  out += ";";
  for (std::size_t i = 0; i < P.elliptic().size(); ++i) {
    out += i ? ", " : " ";
    out += to_string(P.elliptic()[i]);
  }
  return out + ")";
}

std::size_t rational_rank(const IntMatrix& m) {
  std::vector<std::vector<Rational>> a;
  for (const auto& row : m) a.emplace_back(row.begin(), row.end());
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

GroupHom GroupHom::make(GroupPtr source, GroupPtr target, IntMatrix torus, EndoMatrix elliptic) {
  if (!source || !target) throw InvalidArgument("homomorphism without source or target");
  if (source->p != target->p || !(*source->tower == *target->tower)) {
    throw Mismatch("source and target use different coordinate fields");
  }
  if (torus.size() != target->torus_dim) throw Mismatch("torus matrix row count differs from the target dimension");
  for (const auto& row : torus)
    if (row.size() != source->torus_dim) throw Mismatch("torus matrix column count differs from the source dimension");
  if (elliptic.size() != target->curves.size()) throw Mismatch("elliptic matrix row count differs from the target");
  for (std::size_t i = 0; i < elliptic.size(); ++i) {
    if (elliptic[i].size() != source->curves.size()) throw Mismatch("elliptic matrix column count differs from the source");
    for (std::size_t j = 0; j < elliptic[i].size(); ++j) {
      if (!elliptic[i][j].is_zero() && !(target->curves[i] == source->curves[j])) {
        throw Mismatch("nonzero elliptic entry between different curves");
      }
    }
  }
  GroupHom h;
  const std::size_t trank = rational_rank(torus);
  const std::size_t erank = elliptic_rank(*source, *target, elliptic);
  h.kernel_dim_ = (source->torus_dim - trank) + (source->curves.size() - erank);
  h.surjective_ = trank == target->torus_dim && erank == target->curves.size();
  h.source_ = std::move(source);
  h.target_ = std::move(target);
  h.torus_ = std::move(torus);
  h.elliptic_ = std::move(elliptic);
  return h;
}

GroupHom GroupHom::surjective(GroupPtr source, GroupPtr target, IntMatrix torus, EndoMatrix elliptic) {
  GroupHom h = make(std::move(source), std::move(target), std::move(torus), std::move(elliptic));
  if (!h.surjective_) throw ValidationError("homomorphism is not surjective (rank deficit)");
  return h;
}

GroupHom GroupHom::identity(GroupPtr group) {
  IntMatrix t(group->torus_dim, std::vector<BigInt>(group->torus_dim, 0));
  for (std::size_t i = 0; i < t.size(); ++i) t[i][i] = 1;
  EndoMatrix e(group->curves.size(), std::vector<EndoEntry>(group->curves.size(), EndoEntry{0, 0}));
  for (std::size_t i = 0; i < e.size(); ++i) e[i][i] = EndoEntry{1, 0};
  return make(group, group, std::move(t), std::move(e));
}

GroupHom GroupHom::torus_projection(GroupPtr source, GroupPtr target, const std::vector<std::size_t>& coords) {
  IntMatrix t(coords.size(), std::vector<BigInt>(source->torus_dim, 0));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= source->torus_dim) throw InvalidArgument("projection coordinate out of range");
    t[i][coords[i]] = 1;
  }
  EndoMatrix e(target->curves.size(), std::vector<EndoEntry>(source->curves.size(), EndoEntry{0, 0}));
  return make(std::move(source), std::move(target), std::move(t), std::move(e));
}

ProductPoint hom_apply(const GroupHom& h, const ProductPoint& P) {
  if (!same_group(P.group(), h.source())) throw Mismatch("point is not in the source group of the homomorphism");
  const GroupPtr& tgt = h.target();
  std::vector<TowerElem> torus;
  for (const auto& row : h.torus_matrix()) {
    TowerElem acc = tower_constant(tgt->tower, 1);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) acc = acc * P.torus().coords[j].pow(row[j]);
    }
    torus.push_back(std::move(acc));
  }
  unsigned k = 0;
  is_power_of(h.source()->q, h.source()->p, &k);
  std::vector<ECPoint> elliptic;
  for (std::size_t i = 0; i < h.elliptic_matrix().size(); ++i) {
    ECPoint acc = ECPoint::infinity(tgt->curves[i]);
    for (std::size_t j = 0; j < h.elliptic_matrix()[i].size(); ++j) {
      const EndoEntry& e = h.elliptic_matrix()[i][j];
      if (e.is_zero()) continue;
      const ECPoint& Pj = P.elliptic()[j];
      if (e.u != 0) acc = ec_add(acc, ec_scalar_mul(e.u, Pj));
      if (e.v != 0) acc = ec_add(acc, ec_scalar_mul(e.v, ec_frobenius(Pj, k)));
    }
    elliptic.push_back(std::move(acc));
  }
  return ProductPoint::unchecked(tgt, std::move(torus), std::move(elliptic));
}

std::size_t hom_kernel_dim(const GroupHom& h) { return h.kernel_dim(); }

}  // namespace fsetkit
