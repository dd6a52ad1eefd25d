#pragma once

// Finitely generated subgroups of G, their Z[F]-spans, enumeration of
// elements by coefficient vector, and membership tests.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fsetkit/frobenius.hpp"
#include "fsetkit/span.hpp"

namespace fsetkit {

using CoeffVector = std::vector<std::int64_t>;

// "[c1, ..., cr]".
std::string to_string(const CoeffVector& c);

class InvalidRelation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class Subgroup {
 public:
  // Throws InvalidArgument for an empty generator list and Mismatch when a
  // generator lies outside `ambient`.
  Subgroup(GroupPtr ambient, std::vector<ProductPoint> generators);

  const GroupPtr& ambient() const { return ambient_; }
  const std::vector<ProductPoint>& generators() const { return gens_; }
  std::size_t rank() const { return gens_.size(); }

 private:
  GroupPtr ambient_;
  std::vector<ProductPoint> gens_;
};

struct ModuleSpan {
  Subgroup base;
  IntPoly h;
  // F^i(gamma_j), j outer and i inner.
  std::vector<ProductPoint> span_generators;
};

// Checks h(F) = 0 on the generators, then lists F^i(gamma_j) for i < deg h.
// Throws InvalidRelation when the check fails.
ModuleSpan span_generators(const Subgroup& gamma, const IntPoly& h, const FrobeniusOp& op);

ProductPoint evaluate(const Subgroup& gamma, const CoeffVector& c);
TorusPoint evaluate_torus(const Subgroup& gamma, const CoeffVector& c);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 5'000'000;

// (2B+1)^rank; throws ResourceLimit naming the count when it exceeds `budget`.
std::uint64_t box_size(std::size_t rank, std::int64_t B, std::uint64_t budget = kDefaultEnumerationBudget);

// Visits every c with |c|_inf <= B in lexicographic order until `visit`
// returns false.
void for_each_coeff(std::size_t rank, std::int64_t B, const std::function<bool(const CoeffVector&)>& visit,
                    std::uint64_t budget = kDefaultEnumerationBudget);

// The k-th vector (0-based) of that order.
CoeffVector coeff_at(std::size_t rank, std::int64_t B, std::uint64_t k);

std::vector<std::pair<CoeffVector, ProductPoint>> enumerate_group(const Subgroup& gamma, std::int64_t B,
                                                                  std::uint64_t budget = kDefaultEnumerationBudget);

// Exact decision on the torus block. Generator coordinates must lie in
// F_p(t), Unsupported otherwise; a target outside F_p(t) is not a member.
// Uses only the torus blocks of the generators.
std::optional<CoeffVector> torus_membership(const TorusPoint& x, const Subgroup& gamma);

// First witness with |c|_inf <= B in lexicographic order; the torus block is
// compared before any elliptic coordinate is computed.
std::optional<CoeffVector> bounded_membership(const ProductPoint& x, const Subgroup& gamma, std::int64_t B,
                                              std::uint64_t budget = kDefaultEnumerationBudget);

// Gamma with its generators in span coordinates.
class SpanSubgroup {
 public:
  SpanSubgroup(SpanContext& ctx, const Subgroup& gamma);

  const SpanContext& context() const { return *ctx_; }
  const std::vector<SpanPoint>& generators() const { return gens_; }
  const GroupPtr& ambient() const { return ambient_; }

  SpanPoint evaluate(const CoeffVector& c) const;

  struct Membership {
    std::optional<CoeffVector> witness;
    // Set when `witness` is empty and the absence is proven.
    bool certified_absent = false;
  };
  Membership member(const SpanPoint& x) const;

 private:
  SpanContext* ctx_;
  GroupPtr ambient_;
  std::vector<SpanPoint> gens_;
};

// Narrowing with a range check; throws ResourceLimit.
CoeffVector to_coeffs(const IntVector& v);

}  // namespace fsetkit
