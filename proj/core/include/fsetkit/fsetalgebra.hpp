#pragma once

// Groupless F-sets alpha_0 + sum F^{e_i}(alpha_i), their generalized and
// pseudo-generalized pullbacks, enumeration and membership.
//
// Each summand carries an exponent e = stride * n_var + offset. The usual
// shape has one variable per summand and offset 0; summands may also share a
// variable, as in {F^{2n}(Q1) + F^{4n}(Q2)}.

#include <optional>
#include <vector>

#include "fsetkit/zfmodule.hpp"

namespace fsetkit {

using ExponentTuple = std::vector<std::uint64_t>;

struct OrbitTerm {
  ProductPoint point;
  std::uint64_t stride = 1;
  std::uint64_t offset = 0;
  std::size_t var = 0;
};

class GrouplessFSet {
 public:
  // One fresh variable per summand: alpha_0 + sum F^{k_i n_i}(alpha_i).
  static GrouplessFSet make(ProductPoint base, std::vector<std::pair<ProductPoint, std::uint64_t>> summands,
                            FrobeniusOp op);
  // Variables are numbered densely from 0 and each must occur.
  static GrouplessFSet coupled(ProductPoint base, std::vector<OrbitTerm> terms, FrobeniusOp op);
  static GrouplessFSet singleton(ProductPoint base, FrobeniusOp op) { return make(std::move(base), {}, op); }

  const ProductPoint& base() const { return base_; }
  const std::vector<OrbitTerm>& terms() const { return terms_; }
  const FrobeniusOp& frobenius() const { return op_; }
  const GroupPtr& group() const { return base_.group(); }
  std::size_t var_count() const { return vars_; }
  // Every term has its own variable and offset 0.
  bool uncoupled() const;

 private:
  GrouplessFSet(ProductPoint base, std::vector<OrbitTerm> terms, FrobeniusOp op, std::size_t vars)
      : base_(std::move(base)), terms_(std::move(terms)), op_(op), vars_(vars) {}

  ProductPoint base_;
  std::vector<OrbitTerm> terms_;
  FrobeniusOp op_;
  std::size_t vars_ = 0;
};

// k = lcm(k_i); one set per residue tuple r_i in [0, k/k_i), with summands
// F^{k n + k_i r_i}(alpha_i). Throws InvalidArgument for coupled sets.
std::vector<GrouplessFSet> normalize_common_k(const GrouplessFSet& S);

// Frobenius exponent of term `t` at the given tuple.
std::uint64_t term_exponent(const OrbitTerm& t, const ExponentTuple& n);

// Throws ResourceLimit when an explicit coordinate would exceed
// kMaxExplicitHeight; the span functions below have no such limit.
inline constexpr std::uint64_t kMaxExplicitHeight = 4'000'000;
ProductPoint fset_point(const GrouplessFSet& S, const ExponentTuple& n);

// Visits tuples in [0, N]^vars in lexicographic order until `visit` returns false.
void for_each_tuple(std::size_t vars, std::uint64_t N, const std::function<bool(const ExponentTuple&)>& visit,
                    std::uint64_t budget = kDefaultEnumerationBudget);

std::vector<std::pair<ExponentTuple, ProductPoint>> enumerate_fset(const GrouplessFSet& S, std::uint64_t N,
                                                                   std::uint64_t budget = kDefaultEnumerationBudget);

// ---- span coordinates

struct LiftedFSet {
  GrouplessFSet set;
  SpanPoint base;
  std::vector<SpanPoint> points;  // one per term
};

LiftedFSet lift_fset(SpanContext& ctx, const GrouplessFSet& S);
SpanPoint fset_span_point(const SpanContext& ctx, const LiftedFSet& S, const ExponentTuple& n);

// All points whose every summand exponent is at most `max_exponent`, in span
// coordinates. Compares sets with different strides on a common range.
std::vector<SpanPoint> enumerate_fset_exponent_capped(const SpanContext& ctx, const LiftedFSet& S,
                                                      std::uint64_t max_exponent);

// ---- membership

struct FSetMembership {
  std::optional<ExponentTuple> tuple;
  // With no tuple: true when no tuple beyond the searched range can match either.
  bool certified_absent = false;
};

// Absence is certified through linear functionals on the torus block
// (valuation at an irreducible, or degree, with either sign): one that is
// nonnegative on every summand and positive on some summand of each variable
// bounds every exponent, and the search then covers all candidates.
FSetMembership fset_membership(const ProductPoint& x, const GrouplessFSet& S, std::uint64_t N);
FSetMembership fset_membership(const SpanContext& ctx, const SpanPoint& x, const LiftedFSet& S, std::uint64_t N);

// ---- generalized sets

class GeneralizedFSet {
 public:
  // Throws ValidationError unless pi is surjective with positive-dimensional
  // kernel, gamma lives in its source and S in its target.
  static GeneralizedFSet make(GroupHom pi, GrouplessFSet image_set, Subgroup gamma);

  const GroupHom& hom() const { return pi_; }
  const GrouplessFSet& image_set() const { return S_; }
  const Subgroup& subgroup() const { return gamma_; }

 private:
  GeneralizedFSet(GroupHom pi, GrouplessFSet S, Subgroup gamma)
      : pi_(std::move(pi)), S_(std::move(S)), gamma_(std::move(gamma)) {}

  GroupHom pi_;
  GrouplessFSet S_;
  Subgroup gamma_;
};

class PseudoGeneralizedFSet {
 public:
  // offset = evaluate(gamma, offset_coeffs); pi surjective, defined on the
  // ambient group of gamma0.
  static PseudoGeneralizedFSet make(const Subgroup& gamma, const CoeffVector& offset_coeffs, Subgroup gamma0,
                                    GroupHom pi, GrouplessFSet image_set);

  const ProductPoint& offset() const { return offset_; }
  const CoeffVector& offset_coeffs() const { return offset_coeffs_; }
  const Subgroup& subgroup() const { return gamma0_; }
  const GroupHom& hom() const { return pi_; }
  const GrouplessFSet& image_set() const { return S_; }

 private:
  PseudoGeneralizedFSet(ProductPoint offset, CoeffVector c, Subgroup gamma0, GroupHom pi, GrouplessFSet S)
      : offset_(std::move(offset)), offset_coeffs_(std::move(c)), gamma0_(std::move(gamma0)), pi_(std::move(pi)),
        S_(std::move(S)) {}

  ProductPoint offset_;
  CoeffVector offset_coeffs_;
  Subgroup gamma0_;
  GroupHom pi_;
  GrouplessFSet S_;
};

struct FSetUnion {
  std::vector<GrouplessFSet> groupless;
  std::vector<GeneralizedFSet> generalized;
  std::vector<PseudoGeneralizedFSet> pseudo;

  bool empty() const { return groupless.empty() && generalized.empty() && pseudo.empty(); }
};

struct PullbackResult {
  std::vector<CoeffVector> members;
  // Every rejected vector was certified absent from S.
  bool certified = true;
};

// Coefficient vectors c with |c|_inf <= B and pi(evaluate(gamma, c)) in S,
// testing membership in S with cap N.
PullbackResult pullback_enumerate(const GeneralizedFSet& T, std::int64_t B, std::uint64_t N,
                                  std::uint64_t budget = kDefaultEnumerationBudget);
PullbackResult pullback_enumerate(SpanContext& ctx, const GeneralizedFSet& T, std::int64_t B, std::uint64_t N,
                                  std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace fsetkit
