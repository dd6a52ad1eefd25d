#include "fsetkit/zfmodule.hpp"

#include <limits>
#include <set>

namespace fsetkit {

std::string to_string(const CoeffVector& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(c[i]);
  }
  return out + "]";
}

Subgroup::Subgroup(GroupPtr ambient, std::vector<ProductPoint> generators)
    : ambient_(std::move(ambient)), gens_(std::move(generators)) {
  if (gens_.empty()) throw InvalidArgument("subgroup needs at least one generator");
  for (const auto& g : gens_)
    if (!same_group(g.group(), ambient_)) throw Mismatch("generator outside the ambient group");
}

ModuleSpan span_generators(const Subgroup& gamma, const IntPoly& h, const FrobeniusOp& op) {
  const GroupPtr& G = gamma.ambient();
  if (G->torus_dim > 0) {
    // On G_m the q-power map is [q], so h(F) acts on the torus as h(q).
    bool trivial = true;
    for (const auto& g : gamma.generators())
      for (const auto& c : g.torus().coords) trivial = trivial && c.in_base() && c.a().is_one();
    if (!trivial && h.eval(op.q()) != 0) {
      throw InvalidRelation("h(F) does not vanish on the torus block: h(" + op.q().str() + ") != 0");
    }
  }
  for (std::size_t i = 0; i < G->curves.size(); ++i) {
    std::vector<ECPoint> samples;
    for (const auto& g : gamma.generators()) samples.push_back(g.elliptic()[i]);
    if (!verify_relation(h, op, samples)) {
      throw InvalidRelation("h(F) does not vanish on the generators on " + G->curves[i].to_string());
    }
  }
  ModuleSpan span{gamma, h, {}};
  for (const auto& g : gamma.generators()) {
    ProductPoint cur = g;
    for (std::size_t i = 0; i < h.degree(); ++i) {
      span.span_generators.push_back(cur);
      if (i + 1 < h.degree()) cur = frob_apply(op, cur, 1);
    }
  }
  return span;
}

ProductPoint evaluate(const Subgroup& gamma, const CoeffVector& c) {
  if (c.size() != gamma.rank()) throw Mismatch("coefficient vector length differs from the generator count");
  ProductPoint acc = ProductPoint::identity(gamma.ambient());
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] != 0) acc = acc + prod_scale(c[j], gamma.generators()[j]);
  }
  return acc;
}

TorusPoint evaluate_torus(const Subgroup& gamma, const CoeffVector& c) {
  if (c.size() != gamma.rank()) throw Mismatch("coefficient vector length differs from the generator count");
  TorusPoint acc{std::vector<TowerElem>(gamma.ambient()->torus_dim, tower_constant(gamma.ambient()->tower, 1))};
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] != 0) acc = torus_mul(acc, torus_pow(gamma.generators()[j].torus(), c[j]));
  }
  return acc;
}

std::uint64_t box_size(std::size_t rank, std::int64_t B, std::uint64_t budget) {
  if (B < 0) throw InvalidArgument("negative enumeration bound");
  const auto side = static_cast<std::uint64_t>(2 * B + 1);
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    if (n > budget / side) {
      throw ResourceLimit("enumeration of (2*" + std::to_string(B) + "+1)^" + std::to_string(rank) +
                          " coefficient vectors exceeds the budget of " + std::to_string(budget));
    }
    n *= side;
  }
  if (n > budget) throw ResourceLimit("enumeration of " + std::to_string(n) + " vectors exceeds the budget");
  return n;
}

void for_each_coeff(std::size_t rank, std::int64_t B, const std::function<bool(const CoeffVector&)>& visit,
                    std::uint64_t budget) {
  box_size(rank, B, budget);
  CoeffVector c(rank, -B);
  while (true) {
    if (!visit(c)) return;
    std::size_t i = rank;
    while (i > 0 && c[i - 1] == B) c[--i] = -B;
    if (i == 0) return;
    ++c[i - 1];
  }
}

CoeffVector coeff_at(std::size_t rank, std::int64_t B, std::uint64_t k) {
  const auto side = static_cast<std::uint64_t>(2 * B + 1);
  CoeffVector c(rank);
  for (std::size_t i = rank; i-- > 0;) {
    c[i] = static_cast<std::int64_t>(k % side) - B;
    k /= side;
  }
  return c;
}

std::vector<std::pair<CoeffVector, ProductPoint>> enumerate_group(const Subgroup& gamma, std::int64_t B,
                                                                  std::uint64_t budget) {
  std::vector<std::pair<CoeffVector, ProductPoint>> out;
  out.reserve(box_size(gamma.rank(), B, budget));
  for_each_coeff(
      gamma.rank(), B,
      [&](const CoeffVector& c) {
        out.emplace_back(c, evaluate(gamma, c));
        return true;
      },
      budget);
  return out;
}

CoeffVector to_coeffs(const IntVector& v) {
  CoeffVector out;
  for (const auto& x : v) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
      throw ResourceLimit("coefficient " + x.str() + " does not fit in 64 bits");
    }
    out.push_back(static_cast<std::int64_t>(x));
  }
  return out;
}

std::optional<CoeffVector> torus_membership(const TorusPoint& x, const Subgroup& gamma) {
  const GroupPtr& G = gamma.ambient();
  if (x.coords.size() != G->torus_dim) throw Mismatch("torus point of the wrong dimension");
  std::set<Poly> base_set;
  std::vector<std::vector<RatFactors>> gen_factors;
  for (const auto& g : gamma.generators()) {
    std::vector<RatFactors> fs;
    for (const auto& c : g.torus().coords) {
      if (!c.in_base()) throw Unsupported("generator coordinate " + to_string(c) + " is not in F_p(t)");
      fs.push_back(factor_ratfunc(c.a()));
      for (const auto& [poly, v] : fs.back().valuations) base_set.insert(poly);
    }
    gen_factors.push_back(std::move(fs));
  }
  const std::vector<Poly> base(base_set.begin(), base_set.end());

  // Gamma lies in F_p(t)^N; anything outside, or with a prime outside the
  // generators' support, cannot be a member.
  SpanPoint target;
  target.group = G;
  for (const auto& c : x.coords) {
    if (c.is_zero()) throw InvalidArgument("torus coordinate is zero");
    if (!c.in_base()) return std::nullopt;
    auto f = factor_over(c.a(), base);
    if (!f) return std::nullopt;
    target.torus.push_back(std::move(*f));
  }
  target.elliptic.assign(G->curves.size(), EllipticCoord{});

  std::vector<SpanPoint> gens;
  for (auto& fs : gen_factors) {
    SpanPoint s;
    s.group = G;
    s.torus = std::move(fs);
    s.elliptic.assign(G->curves.size(), EllipticCoord{});
    gens.push_back(std::move(s));
  }
  auto sol = span_solve(gens, target);
  if (!sol) return std::nullopt;
  return to_coeffs(*sol);
}

std::optional<CoeffVector> bounded_membership(const ProductPoint& x, const Subgroup& gamma, std::int64_t B,
                                              std::uint64_t budget) {
  if (!same_group(x.group(), gamma.ambient())) throw Mismatch("point outside the ambient group");
  std::optional<CoeffVector> found;
  for_each_coeff(
      gamma.rank(), B,
      [&](const CoeffVector& c) {
        if (!(evaluate_torus(gamma, c) == x.torus())) return true;
        for (std::size_t i = 0; i < x.elliptic().size(); ++i) {
          ECPoint acc = ECPoint::infinity(gamma.ambient()->curves[i]);
          for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0) acc = ec_add(acc, ec_scalar_mul(c[j], gamma.generators()[j].elliptic()[i]));
          if (!(acc == x.elliptic()[i])) return true;
        }
        found = c;
        return false;
      },
      budget);
  return found;
}

SpanSubgroup::SpanSubgroup(SpanContext& ctx, const Subgroup& gamma) : ctx_(&ctx), ambient_(gamma.ambient()) {
  for (const auto& g : gamma.generators()) gens_.push_back(ctx.lift(g));
}

SpanPoint SpanSubgroup::evaluate(const CoeffVector& c) const {
  if (c.size() != gens_.size()) throw Mismatch("coefficient vector length differs from the generator count");
  SpanPoint acc = ctx_->identity(ambient_);
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0) acc = ctx_->add(acc, ctx_->scale(c[j], gens_[j]));
  return acc;
}

SpanSubgroup::Membership SpanSubgroup::member(const SpanPoint& x) const {
  Membership m;
  if (auto sol = span_solve(gens_, x)) {
    m.witness = to_coeffs(*sol);
  } else if (ctx_->canonical()) {
    m.certified_absent = true;
  } else {
    // Torus coordinates are canonical on their own.
    auto strip = [](SpanPoint s) {
      for (auto& e : s.elliptic) e = EllipticCoord{};
      return s;
    };
    std::vector<SpanPoint> tg;
    for (const auto& g : gens_) tg.push_back(strip(g));
    m.certified_absent = !span_solve(tg, strip(x));
  }
  return m;
}

}  // namespace fsetkit
