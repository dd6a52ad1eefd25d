#include "fsetkit/factor.hpp"

#include <algorithm>

#include "fsetkit/galois.hpp"

namespace fsetkit {

unsigned poly_valuation(Poly& f, const Poly& g) {
  unsigned v = 0;
  while (f.degree() >= g.degree()) {
    auto [quo, rem] = f.divmod(g);
    if (!rem.is_zero()) break;
    f = std::move(quo);
    ++v;
  }
  return v;
}

PolyFactors factor_poly(const Poly& f_in) {
  if (f_in.is_zero()) throw InvalidArgument("factorization of zero");
  const std::uint32_t p = f_in.characteristic();
  Poly f = f_in.monic();
  PolyFactors out;
  std::size_t tried = 0;
  // t^{p^d} mod f, to skip degrees with no factor (distinct-degree test).
  Poly frob = Poly::t(p) % f;
  for (std::size_t d = 1; 2 * d <= static_cast<std::size_t>(f.degree()); ++d) {
    frob = frob.frobenius() % f;
    Poly dd = poly_gcd(frob - Poly::t(p), f);
    if (dd.is_one()) continue;
    visit_monic_irreducibles(p, d, [&](const Poly& g) {
      if (++tried > kTrialDivisionBudget) throw ResourceLimit("trial division budget exhausted factoring " + f_in.to_string());
      if ((dd % g).is_zero()) {
        dd = dd.exact_div(g);
        out.emplace_back(g, poly_valuation(f, g));
      }
      return dd.degree() > 0;
    });
    if (f.degree() > 0) frob = frob % f;
  }
  if (f.degree() > 0) out.emplace_back(f, 1u);
  std::sort(out.begin(), out.end());
  return out;
}

RatFactors factor_ratfunc(const RatFunc& f) {
  if (f.is_zero()) throw InvalidArgument("factorization of zero");
  RatFactors r;
  r.unit = f.num().leading();
  for (auto& [g, v] : factor_poly(f.num())) r.valuations[g] += v;
  for (auto& [g, v] : factor_poly(f.den())) r.valuations[g] -= v;
  return r;
}

std::optional<RatFactors> factor_over(const RatFunc& f, std::span<const Poly> base) {
  if (f.is_zero()) throw InvalidArgument("factorization of zero");
  RatFactors r;
  r.unit = f.num().leading();
  Poly num = f.num().monic();
  Poly den = f.den();
  for (const Poly& g : base) {
    const long v = static_cast<long>(poly_valuation(num, g)) - static_cast<long>(poly_valuation(den, g));
    if (v != 0) r.valuations[g] = v;
  }
  if (num.degree() > 0 || den.degree() > 0) return std::nullopt;
  return r;
}

PolyFactors FactorCache::factor(const Poly& f) {
  const Poly key = f.monic();
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  PolyFactors res = factor_poly(key);
  std::lock_guard lock(mu_);
  memo_.emplace(key, res);
  return res;
}

RatFactors FactorCache::factor(const RatFunc& f) {
  if (f.is_zero()) throw InvalidArgument("factorization of zero");
  RatFactors r;
  r.unit = f.num().leading();
  for (auto& [g, v] : factor(f.num())) r.valuations[g] += v;
  for (auto& [g, v] : factor(f.den())) r.valuations[g] -= v;
  return r;
}

}  // namespace fsetkit
