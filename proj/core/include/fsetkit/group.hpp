#pragma once

// The ambient groups G = G_m^N x E_1 x ... x E_e, their points, and the
// block homomorphisms between them (monomial maps on the torus, u + vF
// entries between elliptic factors).

#include <memory>
#include <string>
#include <vector>

#include "fsetkit/elliptic.hpp"
#include "fsetkit/tower.hpp"

namespace fsetkit {

struct GroupDescriptor {
  std::uint32_t p = 0;
  BigInt q;  // field of definition F_q of the Frobenius used on G
  std::size_t torus_dim = 0;
  std::vector<CurveParams> curves;
  TowerPtr tower;

  std::size_t elliptic_count() const { return curves.size(); }
  bool operator==(const GroupDescriptor& o) const;
  std::string to_string() const;
};

using GroupPtr = std::shared_ptr<const GroupDescriptor>;

GroupPtr make_group(TowerPtr tower, const BigInt& q, std::size_t torus_dim, std::vector<CurveParams> curves);

bool same_group(const GroupPtr& a, const GroupPtr& b);

struct TorusPoint {
  std::vector<TowerElem> coords;

  bool operator==(const TorusPoint&) const = default;
};

class ProductPoint {
 public:
  // Validates block sizes, curve assignment, on-curve and nonzero torus coordinates.
  static ProductPoint make(GroupPtr group, std::vector<TowerElem> torus, std::vector<ECPoint> elliptic);
  static ProductPoint identity(GroupPtr group);
  // Skips validation; for results of the group law.
  static ProductPoint unchecked(GroupPtr group, std::vector<TowerElem> torus, std::vector<ECPoint> elliptic);

  const GroupPtr& group() const { return group_; }
  const TorusPoint& torus() const { return torus_; }
  const std::vector<ECPoint>& elliptic() const { return elliptic_; }

  bool is_identity() const;
  bool operator==(const ProductPoint& o) const;

 private:
  GroupPtr group_;
  TorusPoint torus_;
  std::vector<ECPoint> elliptic_;
};

ProductPoint prod_add(const ProductPoint& P, const ProductPoint& Q);
ProductPoint prod_neg(const ProductPoint& P);
ProductPoint prod_sub(const ProductPoint& P, const ProductPoint& Q);
ProductPoint prod_scale(const BigInt& n, const ProductPoint& P);

inline ProductPoint operator+(const ProductPoint& P, const ProductPoint& Q) { return prod_add(P, Q); }
inline ProductPoint operator-(const ProductPoint& P, const ProductPoint& Q) { return prod_sub(P, Q); }
inline ProductPoint operator-(const ProductPoint& P) { return prod_neg(P); }

// Torus block only, componentwise product; used for cheap pruning.
TorusPoint torus_mul(const TorusPoint& a, const TorusPoint& b);
TorusPoint torus_pow(const TorusPoint& a, const BigInt& n);

// "(c1, ..., cN; E1, ..., Ee)".
std::string to_string(const ProductPoint& P);

// u + v F, F the Frobenius of the source group's F_q.
struct EndoEntry {
  BigInt u, v;

  bool is_zero() const { return u == 0 && v == 0; }
  bool operator==(const EndoEntry&) const = default;
};

using IntMatrix = std::vector<std::vector<BigInt>>;
using EndoMatrix = std::vector<std::vector<EndoEntry>>;

class GroupHom {
 public:
  // torus: target_dim x source_dim exponents (target_i = prod_j source_j^{M_ij});
  // elliptic: target_count x source_count entries, nonzero only between equal curves.
  static GroupHom make(GroupPtr source, GroupPtr target, IntMatrix torus, EndoMatrix elliptic);
  // As make(), additionally requiring surjectivity; throws ValidationError otherwise.
  static GroupHom surjective(GroupPtr source, GroupPtr target, IntMatrix torus, EndoMatrix elliptic);

  static GroupHom identity(GroupPtr group);
  // Projection onto the listed torus coordinates, dropping every elliptic factor.
  static GroupHom torus_projection(GroupPtr source, GroupPtr target, const std::vector<std::size_t>& coords);

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  const IntMatrix& torus_matrix() const { return torus_; }
  const EndoMatrix& elliptic_matrix() const { return elliptic_; }
  bool is_surjective() const { return surjective_; }
  std::size_t kernel_dim() const { return kernel_dim_; }

 private:
  GroupPtr source_, target_;
  IntMatrix torus_;
  EndoMatrix elliptic_;
  bool surjective_ = false;
  std::size_t kernel_dim_ = 0;
};

ProductPoint hom_apply(const GroupHom& h, const ProductPoint& P);
std::size_t hom_kernel_dim(const GroupHom& h);

// Rank over Q of an integer matrix.
std::size_t rational_rank(const IntMatrix& m);

}  // namespace fsetkit
