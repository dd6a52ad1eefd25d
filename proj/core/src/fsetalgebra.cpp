#include "fsetkit/fsetalgebra.hpp"

#include <map>
#include <numeric>
#include <set>

namespace fsetkit {

namespace {

long point_height(const ProductPoint& P) {
  long h = 0;
  for (const auto& c : P.torus().coords) h = std::max(h, tower_height(c));
  for (const auto& e : P.elliptic()) {
    if (!e.is_infinity()) h = std::max({h, tower_height(e.x()), tower_height(e.y())});
  }
  return h;
}

// Visits [0, limits[0]] x ... in lexicographic order.
bool for_each_box(const std::vector<std::uint64_t>& limits, const std::function<bool(const ExponentTuple&)>& visit) {
  ExponentTuple n(limits.size(), 0);
  while (true) {
    if (!visit(n)) return false;
    std::size_t i = n.size();
    while (i > 0 && n[i - 1] == limits[i - 1]) n[--i] = 0;
    if (i == 0) return true;
    ++n[i - 1];
  }
}

// One linear functional on the torus block: the valuation at `prime` of
// coordinate `coord`, or its degree when `prime` is empty.
struct Functional {
  std::size_t coord;
  std::optional<Poly> prime;
};

BigInt apply_functional(const Functional& f, const TorusCoord& c) {
  if (f.prime) {
    auto it = c.valuations.find(*f.prime);
    return it == c.valuations.end() ? BigInt(0) : it->second;
  }
  BigInt d = 0;
  for (const auto& [g, v] : c.valuations) d += v * g.degree();
  return d;
}

BigInt apply_functional(const Functional& f, const RatFunc& x) {
  if (f.prime) {
    Poly num = x.num(), den = x.den();
    return BigInt(poly_valuation(num, *f.prime)) - BigInt(poly_valuation(den, *f.prime));
  }
  return BigInt(x.num().degree()) - BigInt(x.den().degree());
}

struct FunctionalRow {
  BigInt base, x;
  std::vector<BigInt> terms;
};

class ExponentOracle {
 public:
  ExponentOracle(const GrouplessFSet& S, std::vector<FunctionalRow> rows) : S_(S), rows_(std::move(rows)) {
    bound_.assign(S.var_count(), std::nullopt);
    for (const auto& row : rows_) {
      for (int sign : {1, -1}) analyse(row, sign);
    }
  }

  bool impossible() const { return impossible_; }
  const std::vector<std::optional<std::uint64_t>>& bounds() const { return bound_; }

  // The torus functionals are additive, so every row must balance exactly.
  bool admissible(const ExponentTuple& n) {
    for (const auto& row : rows_) {
      BigInt acc = row.base;
      for (std::size_t t = 0; t < row.terms.size(); ++t) {
        if (row.terms[t] != 0) acc += qpow(term_exponent(S_.terms()[t], n)) * row.terms[t];
      }
      if (acc != row.x) return false;
    }
    return true;
  }

 private:
  const BigInt& qpow(std::uint64_t e) {
    auto it = qpow_.find(e);
    if (it == qpow_.end()) {
      it = qpow_.emplace(e, boost::multiprecision::pow(S_.frobenius().q(), static_cast<unsigned>(e))).first;
    }
    return it->second;
  }

  void analyse(const FunctionalRow& row, int sign) {
    std::vector<BigInt> vals;
    bool any_positive = false;
    for (const auto& v : row.terms) {
      vals.push_back(sign * v);
      if (vals.back() < 0) return;
      any_positive = any_positive || vals.back() > 0;
    }
    const BigInt R = sign * (row.x - row.base);
    if (!any_positive) {
      if (R != 0) impossible_ = true;
      return;
    }
    if (R < 0) {
      impossible_ = true;
      return;
    }
    const BigInt& q = S_.frobenius().q();
    for (std::size_t t = 0; t < vals.size(); ++t) {
      if (vals[t] == 0) continue;
      const OrbitTerm& term = S_.terms()[t];
      // Largest e with q^e * vals[t] <= R.
      BigInt scaled = vals[t];
      std::uint64_t e = 0;
      if (scaled > R) {
        impossible_ = true;
        return;
      }
      while (scaled * q <= R) {
        scaled *= q;
        ++e;
      }
      if (e < term.offset) {
        impossible_ = true;
        return;
      }
      const std::uint64_t nmax = (e - term.offset) / term.stride;
      auto& b = bound_[term.var];
      if (!b || nmax < *b) b = nmax;
    }
  }

  const GrouplessFSet& S_;
  std::vector<FunctionalRow> rows_;
  std::vector<std::optional<std::uint64_t>> bound_;
  bool impossible_ = false;
  std::map<std::uint64_t, BigInt> qpow_;
};

// Searches [0, min(N, bound_v)] per variable with `matches`; certifies
// absence when every variable's bound lies within the cap and `exact` says
// each rejection was conclusive.
FSetMembership bounded_search(ExponentOracle& oracle, std::size_t vars, std::uint64_t N,
                              const std::function<bool(const ExponentTuple&, bool&)>& matches) {
  FSetMembership out;
  if (oracle.impossible()) {
    out.certified_absent = true;
    return out;
  }
  std::vector<std::uint64_t> limits(vars, N);
  bool covered = true;
  for (std::size_t v = 0; v < vars; ++v) {
    const auto& b = oracle.bounds()[v];
    if (b && *b <= N) limits[v] = *b;
    else covered = false;
  }
  bool exact = true;
  for_each_box(limits, [&](const ExponentTuple& n) {
    if (!oracle.admissible(n)) return true;
    bool conclusive = true;
    if (matches(n, conclusive)) {
      out.tuple = n;
      return false;
    }
    exact = exact && conclusive;
    return true;
  });
  if (!out.tuple) out.certified_absent = covered && exact;
  return out;
}

std::set<Poly> support(const TorusCoord& c) {
  std::set<Poly> s;
  for (const auto& [g, v] : c.valuations) s.insert(g);
  return s;
}

}  // namespace

GrouplessFSet GrouplessFSet::make(ProductPoint base, std::vector<std::pair<ProductPoint, std::uint64_t>> summands,
                                  FrobeniusOp op) {
  std::vector<OrbitTerm> terms;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    terms.push_back(OrbitTerm{std::move(summands[i].first), summands[i].second, 0, i});
  }
  return coupled(std::move(base), std::move(terms), op);
}

GrouplessFSet GrouplessFSet::coupled(ProductPoint base, std::vector<OrbitTerm> terms, FrobeniusOp op) {
  if (op.p() != base.group()->p) throw Mismatch("Frobenius characteristic differs from the group");
  std::size_t vars = 0;
  for (const auto& t : terms) {
    if (t.stride == 0) throw InvalidArgument("F-set stride must be positive");
    if (!same_group(t.point.group(), base.group())) throw Mismatch("F-set summands in different groups");
    vars = std::max(vars, t.var + 1);
  }
  std::vector<bool> used(vars, false);
  for (const auto& t : terms) used[t.var] = true;
  for (std::size_t v = 0; v < vars; ++v)
    if (!used[v]) throw InvalidArgument("F-set variable " + std::to_string(v) + " is unused");
  return GrouplessFSet(std::move(base), std::move(terms), op, vars);
}

bool GrouplessFSet::uncoupled() const {
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].var != i || terms_[i].offset != 0) return false;
  return true;
}

std::vector<GrouplessFSet> normalize_common_k(const GrouplessFSet& S) {
  if (!S.uncoupled()) throw InvalidArgument("normalize_common_k needs one variable per summand");
  std::uint64_t k = 1;
  for (const auto& t : S.terms()) k = std::lcm(k, t.stride);
  std::vector<std::uint64_t> limits;
  for (const auto& t : S.terms()) limits.push_back(k / t.stride - 1);
  std::vector<GrouplessFSet> out;
  for_each_box(limits, [&](const ExponentTuple& r) {
    std::vector<OrbitTerm> terms;
    for (std::size_t i = 0; i < S.terms().size(); ++i) {
      const OrbitTerm& t = S.terms()[i];
      terms.push_back(OrbitTerm{t.point, k, t.stride * r[i], i});
    }
    out.push_back(GrouplessFSet::coupled(S.base(), std::move(terms), S.frobenius()));
    return true;
  });
  return out;
}

std::uint64_t term_exponent(const OrbitTerm& t, const ExponentTuple& n) { return t.stride * n.at(t.var) + t.offset; }

ProductPoint fset_point(const GrouplessFSet& S, const ExponentTuple& n) {
  if (n.size() != S.var_count()) throw Mismatch("exponent tuple length differs from the variable count");
  ProductPoint acc = S.base();
  for (const auto& t : S.terms()) {
    const std::uint64_t e = term_exponent(t, n);
    const BigInt height = BigInt(point_height(t.point)) *
                          boost::multiprecision::pow(S.frobenius().q(), static_cast<unsigned>(e));
    if (height > kMaxExplicitHeight) {
      throw ResourceLimit("F^" + std::to_string(e) + " of a summand has height " + height.str() +
                          ", beyond explicit arithmetic");
    }
    acc = acc + frob_apply(S.frobenius(), t.point, e);
  }
  return acc;
}

void for_each_tuple(std::size_t vars, std::uint64_t N, const std::function<bool(const ExponentTuple&)>& visit,
                    std::uint64_t budget) {
  BigInt count = boost::multiprecision::pow(BigInt(N + 1), static_cast<unsigned>(vars));
  if (count > budget) throw ResourceLimit("enumeration of " + count.str() + " exponent tuples exceeds the budget");
  for_each_box(std::vector<std::uint64_t>(vars, N), visit);
}

std::vector<std::pair<ExponentTuple, ProductPoint>> enumerate_fset(const GrouplessFSet& S, std::uint64_t N,
                                                                   std::uint64_t budget) {
  std::vector<std::pair<ExponentTuple, ProductPoint>> out;
  for_each_tuple(
      S.var_count(), N,
      [&](const ExponentTuple& n) {
        out.emplace_back(n, fset_point(S, n));
        return true;
      },
      budget);
  return out;
}

LiftedFSet lift_fset(SpanContext& ctx, const GrouplessFSet& S) {
  LiftedFSet out{S, ctx.lift(S.base()), {}};
  for (const auto& t : S.terms()) out.points.push_back(ctx.lift(t.point));
  return out;
}

SpanPoint fset_span_point(const SpanContext& ctx, const LiftedFSet& S, const ExponentTuple& n) {
  if (n.size() != S.set.var_count()) throw Mismatch("exponent tuple length differs from the variable count");
  SpanPoint acc = S.base;
  const unsigned k = S.set.frobenius().p_steps();
  for (std::size_t t = 0; t < S.points.size(); ++t) {
    acc = ctx.add(acc, ctx.frobenius(S.points[t], k * term_exponent(S.set.terms()[t], n)));
  }
  return acc;
}

std::vector<SpanPoint> enumerate_fset_exponent_capped(const SpanContext& ctx, const LiftedFSet& S,
                                                      std::uint64_t max_exponent) {
  const GrouplessFSet& set = S.set;
  std::vector<std::uint64_t> limits(set.var_count(), std::numeric_limits<std::uint64_t>::max());
  for (const auto& t : set.terms()) {
    if (t.offset > max_exponent) return {};
    limits[t.var] = std::min(limits[t.var], (max_exponent - t.offset) / t.stride);
  }
  std::vector<SpanPoint> out;
  for_each_box(limits, [&](const ExponentTuple& n) {
    out.push_back(fset_span_point(ctx, S, n));
    return true;
  });
  return out;
}

FSetMembership fset_membership(const ProductPoint& x, const GrouplessFSet& S, std::uint64_t N) {
  if (!same_group(x.group(), S.group())) throw Mismatch("point outside the F-set's group");
  // Functionals only on coordinates that lie in F_p(t) for every point involved.
  std::vector<FunctionalRow> rows;
  for (std::size_t i = 0; i < x.torus().coords.size(); ++i) {
    bool usable = x.torus().coords[i].in_base() && S.base().torus().coords[i].in_base();
    for (const auto& t : S.terms()) usable = usable && t.point.torus().coords[i].in_base();
    if (!usable) continue;
    const TorusCoord base = factor_ratfunc(S.base().torus().coords[i].a());
    std::vector<TorusCoord> terms;
    std::set<Poly> primes = support(base);
    for (const auto& t : S.terms()) {
      terms.push_back(factor_ratfunc(t.point.torus().coords[i].a()));
      primes.merge(support(terms.back()));
    }
    std::vector<Functional> fs{{i, std::nullopt}};
    for (const auto& g : primes) fs.push_back({i, g});
    for (const auto& f : fs) {
      FunctionalRow row{apply_functional(f, base), apply_functional(f, x.torus().coords[i].a()), {}};
      for (const auto& t : terms) row.terms.push_back(apply_functional(f, t));
      rows.push_back(std::move(row));
    }
  }
  ExponentOracle oracle(S, std::move(rows));
  return bounded_search(oracle, S.var_count(), N, [&](const ExponentTuple& n, bool&) { return fset_point(S, n) == x; });
}

FSetMembership fset_membership(const SpanContext& ctx, const SpanPoint& x, const LiftedFSet& S, std::uint64_t N) {
  if (!same_group(x.group, S.base.group)) throw Mismatch("point outside the F-set's group");
  std::vector<FunctionalRow> rows;
  for (std::size_t i = 0; i < x.torus.size(); ++i) {
    std::set<Poly> primes = support(x.torus[i]);
    primes.merge(support(S.base.torus[i]));
    for (const auto& pt : S.points) primes.merge(support(pt.torus[i]));
    std::vector<Functional> fs{{i, std::nullopt}};
    for (const auto& g : primes) fs.push_back({i, g});
    for (const auto& f : fs) {
      FunctionalRow row{apply_functional(f, S.base.torus[i]), apply_functional(f, x.torus[i]), {}};
      for (const auto& pt : S.points) row.terms.push_back(apply_functional(f, pt.torus[i]));
      rows.push_back(std::move(row));
    }
  }
  ExponentOracle oracle(S.set, std::move(rows));
  const bool canonical = ctx.canonical();
  return bounded_search(oracle, S.set.var_count(), N, [&](const ExponentTuple& n, bool& conclusive) {
    const SpanPoint y = fset_span_point(ctx, S, n);
    if (y == x) return true;
    // Differing torus coordinates are conclusive on their own.
    conclusive = canonical || y.torus != x.torus;
    return false;
  });
}

GeneralizedFSet GeneralizedFSet::make(GroupHom pi, GrouplessFSet image_set, Subgroup gamma) {
  if (pi.kernel_dim() == 0) throw ValidationError("generalized F-set needs dim ker(pi) > 0");
  if (!pi.is_surjective()) throw ValidationError("generalized F-set needs a surjective homomorphism");
  if (!same_group(gamma.ambient(), pi.source())) throw ValidationError("subgroup is not in the source of pi");
  if (!same_group(image_set.group(), pi.target())) throw ValidationError("image set is not in the target of pi");
  return GeneralizedFSet(std::move(pi), std::move(image_set), std::move(gamma));
}

PseudoGeneralizedFSet PseudoGeneralizedFSet::make(const Subgroup& gamma, const CoeffVector& offset_coeffs,
                                                  Subgroup gamma0, GroupHom pi, GrouplessFSet image_set) {
  if (!pi.is_surjective()) throw ValidationError("pseudo-generalized F-set needs a surjective homomorphism");
  if (!same_group(gamma0.ambient(), pi.source())) throw ValidationError("subgroup is not in the source of pi");
  if (!same_group(gamma.ambient(), gamma0.ambient())) throw ValidationError("offset group differs from the subgroup's");
  if (!same_group(image_set.group(), pi.target())) throw ValidationError("image set is not in the target of pi");
  ProductPoint offset = evaluate(gamma, offset_coeffs);
  return PseudoGeneralizedFSet(std::move(offset), offset_coeffs, std::move(gamma0), std::move(pi),
                               std::move(image_set));
}

PullbackResult pullback_enumerate(SpanContext& ctx, const GeneralizedFSet& T, std::int64_t B, std::uint64_t N,
                                  std::uint64_t budget) {
  const SpanSubgroup gamma(ctx, T.subgroup());
  const LiftedFSet S = lift_fset(ctx, T.image_set());
  PullbackResult out;
  for_each_coeff(
      gamma.generators().size(), B,
      [&](const CoeffVector& c) {
        const FSetMembership m = fset_membership(ctx, ctx.apply(T.hom(), gamma.evaluate(c)), S, N);
        if (m.tuple) out.members.push_back(c);
        else out.certified = out.certified && m.certified_absent;
        return true;
      },
      budget);
  return out;
}

PullbackResult pullback_enumerate(const GeneralizedFSet& T, std::int64_t B, std::uint64_t N, std::uint64_t budget) {
  std::vector<CurveParams> curves = T.hom().source()->curves;
  for (const auto& c : T.hom().target()->curves) curves.push_back(c);
  SpanContext ctx(T.hom().source()->tower, curves);
  return pullback_enumerate(ctx, T, B, N, budget);
}

}  // namespace fsetkit
