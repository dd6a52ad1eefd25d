#pragma once

// Subvarieties of G given by explicit equations: Laurent polynomials in the
// torus coordinates x1..xN and, per elliptic factor i, polynomials in the
// affine coordinates Xi, Yi. Equations never mix blocks.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsetkit/lattice.hpp"
#include "fsetkit/span.hpp"

namespace fsetkit {

using Exponent = std::vector<std::int64_t>;

class LaurentPoly {
 public:
  LaurentPoly(std::uint32_t p, std::size_t vars) : p_(p), vars_(vars) {}

  // Integer coefficients reduced mod p; variables x1..x<vars>. Division only
  // by monomials, negative powers only of monomials.
  static LaurentPoly parse(std::uint32_t p, std::size_t vars, std::string_view text);
  static LaurentPoly constant(std::uint32_t p, std::size_t vars, std::int64_t c);
  static LaurentPoly monomial(std::uint32_t p, const Exponent& e, std::int64_t c = 1);

  std::uint32_t characteristic() const { return p_; }
  std::size_t var_count() const { return vars_; }
  const std::map<Exponent, FpElem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Single term.
  bool is_monomial() const { return terms_.size() == 1; }
  // Componentwise minimum over the support.
  Exponent min_exponent() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  // Throws InvalidArgument unless this is a monomial.
  LaurentPoly monomial_inverse() const;
  LaurentPoly pow(std::int64_t k) const;

  // f(x) * x^{-m} with m = min_exponent(): a polynomial expression, zero
  // exactly when f(x) is.
  TowerElem evaluate_cleared(const std::vector<TowerElem>& x) const;

  bool operator==(const LaurentPoly& o) const { return p_ == o.p_ && vars_ == o.vars_ && terms_ == o.terms_; }

 private:
  void add_term(const Exponent& e, const FpElem& c);

  std::uint32_t p_;
  std::size_t vars_;
  std::map<Exponent, FpElem> terms_;
};

std::string to_string(const LaurentPoly& f);

// Polynomial in the affine coordinates (X, Y) of one elliptic factor, with
// coefficients in the tower.
class CurvePoly {
 public:
  explicit CurvePoly(TowerPtr tower) : tower_(std::move(tower)) {}

  // Variables X<index>, Y<index> (1-based), t and s.
  static CurvePoly parse(const TowerPtr& tower, std::size_t index, std::string_view text);

  const std::map<std::pair<std::uint32_t, std::uint32_t>, TowerElem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  CurvePoly operator+(const CurvePoly& o) const;
  CurvePoly operator-(const CurvePoly& o) const;
  CurvePoly operator-() const;
  CurvePoly operator*(const CurvePoly& o) const;
  // Throws InvalidArgument unless `o` is a nonzero constant.
  CurvePoly operator/(const CurvePoly& o) const;

  TowerElem evaluate(const TowerElem& x, const TowerElem& y) const;

  void add_term(std::uint32_t i, std::uint32_t j, const TowerElem& c);

 private:
  TowerPtr tower_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, TowerElem> terms_;
};

// A system on one elliptic factor. The affine equations say nothing at the
// point at infinity; `contains_infinity` decides it.
struct CurveSystem {
  std::vector<CurvePoly> equations;
  bool contains_infinity = false;
};

class Subvariety {
 public:
  // elliptic[i] empty means factor i is unconstrained. Throws
  // ValidationError when nothing is constrained; use full() for G itself.
  static Subvariety make(GroupPtr group, std::vector<LaurentPoly> torus, std::vector<std::optional<CurveSystem>> elliptic);
  static Subvariety full(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  const std::vector<LaurentPoly>& torus_equations() const { return torus_; }
  const std::vector<std::optional<CurveSystem>>& elliptic_constraints() const { return elliptic_; }
  bool is_full() const;
  // Every elliptic factor is free.
  bool split() const;

 private:
  Subvariety(GroupPtr g, std::vector<LaurentPoly> t, std::vector<std::optional<CurveSystem>> e)
      : group_(std::move(g)), torus_(std::move(t)), elliptic_(std::move(e)) {}

  GroupPtr group_;
  std::vector<LaurentPoly> torus_;
  std::vector<std::optional<CurveSystem>> elliptic_;
};

bool contains_torus(const Subvariety& X, const TorusPoint& t);
bool contains_elliptic(const Subvariety& X, std::size_t factor, const ECPoint& P);
bool contains(const Subvariety& X, const ProductPoint& P);
// Materializes only the blocks that X constrains.
bool contains(const SpanContext& ctx, const Subvariety& X, const SpanPoint& P,
              const MaterializeBudget& budget = {});

struct StabilizerInfo {
  std::size_t dimension = 0;
  // Row basis of the character lattice cutting out the stabilizer's torus part.
  std::vector<IntVector> torus_characters;
  // Basis of the cocharacters of that subtorus: g = (l^{w_1}, ..., l^{w_N}).
  std::vector<IntVector> subtorus_cocharacters;
  std::vector<std::size_t> full_elliptic_factors;
};

// Identity component only. Characters are the differences m_i - m_0 of the
// support exponents.
StabilizerInfo torus_stabilizer(const LaurentPoly& f);

// Torus equations pooled, every free elliptic factor counted whole. Throws
// Unsupported when some elliptic factor is constrained.
StabilizerInfo product_stabilizer(const Subvariety& X);

}  // namespace fsetkit
