#include <gtest/gtest.h>

#include "fsetkit/zfmodule.hpp"
#include "generators.hpp"

namespace fsetkit {
namespace {

struct Ex1 {
  TowerPtr L = make_tower(parse_poly(5, "t^3+1"));
  CurveParams E = make_curve(5, 0, 1);
  GroupPtr G = make_group(L, BigInt(5), 2, {E});
  ECPoint P = ECPoint::affine(E, tower_t(L), tower_s(L));
  ProductPoint Q = ProductPoint::make(G, {tower_t(L), parse_tower(L, "t+1")}, {P});
};

TEST(Coefficients, OrderingAndSize) {
  EXPECT_EQ(box_size(2, 3), 49u);
  EXPECT_THROW(box_size(4, 1000), ResourceLimit);
  std::uint64_t k = 0;
  CoeffVector prev;
  for_each_coeff(2, 2, [&](const CoeffVector& c) {
    EXPECT_EQ(c, coeff_at(2, 2, k));
    if (k > 0) EXPECT_LT(prev, c);
    prev = c;
    ++k;
    return true;
  });
  EXPECT_EQ(k, 25u);
  EXPECT_EQ(coeff_at(2, 2, 0), (CoeffVector{-2, -2}));
}

TEST(Subgroup, RejectsEmptyAndForeignGenerators) {
  Ex1 ex;
  EXPECT_THROW(Subgroup(ex.G, {}), InvalidArgument);
  const GroupPtr H = make_group(ex.L, BigInt(5), 1, {});
  EXPECT_THROW(Subgroup(H, {ex.Q}), Mismatch);
}

TEST(Subgroup, EvaluateIsScalarMultiple) {
  Ex1 ex;
  const Subgroup gamma(ex.G, {ex.Q});
  EXPECT_EQ(evaluate(gamma, {3}), ex.Q + ex.Q + ex.Q);
  EXPECT_EQ(evaluate(gamma, {-2}), -(ex.Q + ex.Q));
  EXPECT_TRUE(evaluate(gamma, {0}).is_identity());
}

TEST(Subgroup, SpanRelationChecked) {
  Ex1 ex;
  const Subgroup gamma(ex.G, {ex.Q});
  const FrobeniusOp op(5, BigInt(5));
  const ModuleSpan span = span_generators(gamma, minimal_poly_on_G(*ex.G, BigInt(5)), op);
  EXPECT_EQ(span.span_generators.size(), 3u);
  EXPECT_EQ(span.span_generators[1], frob_apply(op, ex.Q, 1));
  EXPECT_THROW(span_generators(gamma, IntPoly::from_ints({5, 0, 1}), op), InvalidRelation);
}

TEST(Subgroup, EvaluateIsAdditive) {
  Ex1 ex;
  const ProductPoint R = ProductPoint::make(ex.G, {parse_tower(ex.L, "t^2+2"), tower_constant(ex.L, 3)},
                                            {ec_frobenius(ex.P)});
  const Subgroup gamma(ex.G, {ex.Q, R});
  std::mt19937_64 rng(testing::kSeed);
  for (int i = 0; i < 100; ++i) {
    const CoeffVector a{testing::uniform(rng, -4, 4), testing::uniform(rng, -4, 4)}, b{testing::uniform(rng, -4, 4), testing::uniform(rng, -4, 4)};
    const CoeffVector sum{a[0] + b[0], a[1] + b[1]};
    EXPECT_EQ(evaluate(gamma, a) + evaluate(gamma, b), evaluate(gamma, sum)) << to_string(a) << to_string(b);
  }
}

TEST(Subgroup, EnumerationIsOrderedAndComplete) {
  Ex1 ex;
  const ProductPoint R = ProductPoint::make(ex.G, {parse_tower(ex.L, "t+3"), tower_t(ex.L)}, {ECPoint::infinity(ex.E)});
  const Subgroup gamma(ex.G, {ex.Q, R});
  const auto all = enumerate_group(gamma, 2);
  ASSERT_EQ(all.size(), 25u);
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LT(all[i - 1].first, all[i].first);
  for (const auto& [c, P] : all) EXPECT_EQ(P, evaluate(gamma, c));
}

TEST(TorusMembership, RoundTrip) {
  const TowerPtr L = make_tower(parse_poly(5, "t^3+1"));
  const GroupPtr G = make_group(L, BigInt(5), 2, {});
  // The third generator is the product of the first two, so witnesses need not be unique.
  const Subgroup gamma(G, {ProductPoint::make(G, {parse_tower(L, "t"), parse_tower(L, "t+1")}, {}),
                           ProductPoint::make(G, {parse_tower(L, "2*(t+2)"), parse_tower(L, "1/t")}, {}),
                           ProductPoint::make(G, {parse_tower(L, "2*t*(t+2)"), parse_tower(L, "(t+1)/t")}, {})});
  std::mt19937_64 rng(testing::kSeed + 1);
  for (int i = 0; i < 50; ++i) {
    const CoeffVector c{testing::uniform(rng, -9, 9), testing::uniform(rng, -9, 9), testing::uniform(rng, -9, 9)};
    const TorusPoint x = evaluate_torus(gamma, c);
    const auto found = torus_membership(x, gamma);
    ASSERT_TRUE(found.has_value()) << to_string(c);
    EXPECT_EQ(evaluate_torus(gamma, *found), x) << to_string(c);
  }
}

TEST(TorusMembership, FindsWitness) {
  Ex1 ex;
  const Subgroup gamma(ex.G, {ex.Q});
  const TorusPoint x{{parse_tower(ex.L, "t^-4"), parse_tower(ex.L, "(t+1)^-4")}};
  EXPECT_EQ(torus_membership(x, gamma), (CoeffVector{-4}));
  const TorusPoint y{{parse_tower(ex.L, "t^2"), parse_tower(ex.L, "(t+1)^3")}};
  EXPECT_FALSE(torus_membership(y, gamma).has_value());
  const TorusPoint z{{tower_s(ex.L), tower_constant(ex.L, 1)}};
  EXPECT_FALSE(torus_membership(z, gamma).has_value());
  const ProductPoint R = ProductPoint::make(ex.G, {tower_s(ex.L), tower_t(ex.L)}, {ex.P});
  EXPECT_THROW(torus_membership(x, Subgroup(ex.G, {R})), Unsupported);
}

TEST(TorusMembership, AgreesWithBoundedEnumeration) {
  const TowerPtr L = make_tower(parse_poly(5, "t^3+1"));
  std::mt19937_64 rng(testing::kSeed);
  for (int instance = 0; instance < 40; ++instance) {
    const testing::TorusInstance inst = testing::random_torus_instance(rng, L);
    const auto found = torus_membership(inst.target, inst.gamma);
    EXPECT_EQ(found.has_value(), testing::enumerated_member(L, inst, 3)) << "instance " << instance;
    if (found) EXPECT_EQ(testing::naive_evaluate(L, inst, *found), inst.target) << "instance " << instance;
  }
}

TEST(BoundedMembership, ChecksEllipticBlock) {
  Ex1 ex;
  const Subgroup gamma(ex.G, {ex.Q});
  EXPECT_EQ(bounded_membership(evaluate(gamma, {5}), gamma, 6), (CoeffVector{5}));
  const ProductPoint Q1 = ProductPoint::make(ex.G, ex.Q.torus().coords, {ECPoint::infinity(ex.E)});
  EXPECT_FALSE(bounded_membership(Q1, gamma, 6).has_value());
}

TEST(SpanMembership, CertifiesAbsence) {
  Ex1 ex;
  SpanContext ctx(ex.L, {ex.E});
  const Subgroup gamma(ex.G, {ex.Q});
  const SpanSubgroup sg(ctx, gamma);
  // F^2(Q) = (t^25, (t+1)^25, -5P) is not in <Q>; 25 Q is.
  const auto in = sg.member(ctx.scale(BigInt(25), sg.generators()[0]));
  EXPECT_EQ(in.witness, (CoeffVector{25}));
  const auto out = sg.member(ctx.frobenius(sg.generators()[0], 2));
  EXPECT_FALSE(out.witness.has_value());
  EXPECT_TRUE(out.certified_absent);
  EXPECT_TRUE(ctx.canonical());
}

TEST(SpanCoordinates, AgreeWithExplicitArithmetic) {
  Ex1 ex;
  SpanContext ctx(ex.L, {ex.E});
  const FrobeniusOp op(5, BigInt(5));
  const SpanPoint q = ctx.lift(ex.Q);
  const SpanPoint x = ctx.add(ctx.frobenius(q, 1), ctx.scale(BigInt(-3), q));
  EXPECT_EQ(ctx.materialize(x), frob_apply(op, ex.Q, 1) - prod_scale(BigInt(3), ex.Q));
  EXPECT_EQ(ctx.lift(ctx.materialize(x)), x);
}

}  // namespace
}  // namespace fsetkit
