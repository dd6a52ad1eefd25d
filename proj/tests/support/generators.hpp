#pragma once

// Seeded random instances shared by the property tests and the acceptance
// binary.

#include <numeric>

#include "oracles.hpp"

namespace fsetkit::testing {

// A pure-torus subgroup built from a few small irreducibles and constants,
// with a target that is a product inside the box |c| <= 3, possibly times a
// unit (t+3) outside the generators' support.
struct TorusInstance {
  GroupPtr group;
  std::vector<std::vector<TowerElem>> coords;  // coords[i][j]: coordinate i of generator j
  Subgroup gamma;
  TorusPoint target;
};

inline TorusPoint naive_evaluate(const TowerPtr& L, const TorusInstance& inst, const CoeffVector& c) {
  TorusPoint out;
  for (const auto& row : inst.coords) out.coords.push_back(naive_torus_product(L, row, c));
  return out;
}

inline TorusInstance random_torus_instance(std::mt19937_64& rng, const TowerPtr& L) {
  const char* units[] = {"t", "t+1", "t+2", "t^2+2", "2", "3"};
  const auto dim = static_cast<std::size_t>(uniform(rng, 1, 2));
  const auto rank = static_cast<std::size_t>(uniform(rng, 1, 2));
  const GroupPtr G = make_group(L, BigInt(5), dim, {});
  std::vector<ProductPoint> gens;
  std::vector<std::vector<TowerElem>> coords(dim);
  for (std::size_t j = 0; j < rank; ++j) {
    std::vector<TowerElem> torus;
    for (std::size_t i = 0; i < dim; ++i) {
      TowerElem u = parse_tower(L, units[uniform(rng, 0, 5)]);
      if (uniform(rng, 0, 1)) u = u * parse_tower(L, units[uniform(rng, 0, 3)]);
      torus.push_back(u);
      coords[i].push_back(u);
    }
    gens.push_back(ProductPoint::make(G, torus, {}));
  }
  TorusInstance inst{G, coords, Subgroup(G, gens), {}};
  CoeffVector c(rank);
  for (auto& x : c) x = uniform(rng, -3, 3);
  inst.target = naive_evaluate(L, inst, c);
  if (uniform(rng, 0, 1)) inst.target.coords[0] = inst.target.coords[0] * parse_tower(L, "t+3");
  return inst;
}

// Membership by trying every c with |c| <= B.
inline bool enumerated_member(const TowerPtr& L, const TorusInstance& inst, std::int64_t B) {
  bool hit = false;
  for_each_coeff(inst.gamma.rank(), B, [&](const CoeffVector& v) {
    hit = naive_evaluate(L, inst, v) == inst.target;
    return !hit;
  });
  return hit;
}

inline ProductPoint random_example_point(std::mt19937_64& rng, const ExampleScenario& sc) {
  const char* units[] = {"t", "t+1", "t+2", "1/t", "3", "t^2+2", "(t+1)/(t+4)"};
  std::vector<TowerElem> torus;
  for (std::size_t i = 0; i < sc.group->torus_dim; ++i) torus.push_back(parse_tower(sc.tower, units[uniform(rng, 0, 6)]));
  const ECPoint& P = sc.Q.elliptic()[0];
  ECPoint e = ECPoint::infinity(sc.curve);
  switch (uniform(rng, 0, 3)) {
    case 0: break;
    case 1: e = P; break;
    case 2: e = ec_neg(P); break;
    default: e = frob_apply(sc.op, P, 1); break;
  }
  return ProductPoint::make(sc.group, std::move(torus), {e});
}

// Base plus one to three summands with strides in 1..3.
inline GrouplessFSet random_fset(std::mt19937_64& rng, const ExampleScenario& sc) {
  const ProductPoint base = random_example_point(rng, sc);
  std::vector<std::pair<ProductPoint, std::uint64_t>> summands;
  for (auto m = uniform(rng, 1, 3); m > 0; --m) {
    summands.emplace_back(random_example_point(rng, sc), static_cast<std::uint64_t>(uniform(rng, 1, 3)));
  }
  return GrouplessFSet::make(base, summands, sc.op);
}

// Points of S and of the union of normalize_common_k(S) whose summand
// exponents are all at most `cap`, as span-coordinate keys.
struct NormalizeComparison {
  std::set<std::string> input, output;
  std::size_t parts = 0;
};

inline NormalizeComparison compare_normalized(const ExampleScenario& sc, const GrouplessFSet& S, std::uint64_t cap) {
  SpanContext ctx(sc.tower, {sc.curve});
  NormalizeComparison r;
  r.input = span_keys(enumerate_fset_exponent_capped(ctx, lift_fset(ctx, S), cap));
  const auto parts = normalize_common_k(S);
  r.parts = parts.size();
  for (const auto& part : parts) {
    for (const auto& x : span_keys(enumerate_fset_exponent_capped(ctx, lift_fset(ctx, part), cap))) r.output.insert(x);
  }
  return r;
}

}  // namespace fsetkit::testing
