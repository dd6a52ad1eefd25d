#pragma once

// Factorization of polynomials in F_p[t] into monic irreducibles by trial
// division, and of rational functions into a unit times irreducible powers.

#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "fsetkit/exactfield.hpp"

namespace fsetkit {

// Irreducible factors with multiplicity, in Poly order.
using PolyFactors = std::vector<std::pair<Poly, unsigned>>;

// Candidates tried before giving up with ResourceLimit.
inline constexpr std::size_t kTrialDivisionBudget = 200'000;

PolyFactors factor_poly(const Poly& f);

// f = unit * prod g^v, unit in F_p^*, v nonzero; Poly order on g.
struct RatFactors {
  std::uint32_t unit = 1;
  std::map<Poly, BigInt> valuations;

  bool operator==(const RatFactors&) const = default;
};

RatFactors factor_ratfunc(const RatFunc& f);

// Valuations of f at each of the given monic irreducibles; empty when f has
// an irreducible factor outside `base`.
std::optional<RatFactors> factor_over(const RatFunc& f, std::span<const Poly> base);

// Exponent of g in f (f nonzero, g monic irreducible).
unsigned poly_valuation(Poly& f, const Poly& g);

// Memoizes factor_poly; safe for concurrent use.
class FactorCache {
 public:
  PolyFactors factor(const Poly& f);
  RatFactors factor(const RatFunc& f);

 private:
  std::mutex mu_;
  std::map<Poly, PolyFactors> memo_;
};

}  // namespace fsetkit
