#include <gtest/gtest.h>

#include <algorithm>

#include "fsetkit/intersector.hpp"
#include "generators.hpp"

namespace fsetkit {
namespace {

struct Torus1 {
  TowerPtr L = make_tower(parse_poly(5, "t^3+1"));
  GroupPtr G = make_group(L, BigInt(5), 1, {});
  FrobeniusOp op{5, BigInt(5)};
  ProductPoint pt(const char* text) const { return ProductPoint::make(G, {parse_tower(L, text)}, {}); }
};

TEST(GrouplessFSet, PointsAreFrobeniusOrbits) {
  Torus1 T;
  const GrouplessFSet S = GrouplessFSet::make(T.pt("2"), {{T.pt("t"), 1}, {T.pt("t+1"), 2}}, T.op);
  EXPECT_EQ(S.var_count(), 2u);
  EXPECT_TRUE(S.uncoupled());
  EXPECT_EQ(fset_point(S, {1, 1}), T.pt("2 * t^5 * (t+1)^25"));
  EXPECT_EQ(enumerate_fset(S, 2).size(), 9u);
}

TEST(GrouplessFSet, ExplicitHeightIsBounded) {
  Torus1 T;
  const GrouplessFSet S = GrouplessFSet::make(T.pt("1"), {{T.pt("t"), 1}}, T.op);
  EXPECT_THROW(fset_point(S, {12}), ResourceLimit);
}

TEST(GrouplessFSet, CoupledVariablesMustBeDense) {
  Torus1 T;
  EXPECT_THROW(GrouplessFSet::coupled(T.pt("1"), {OrbitTerm{T.pt("t"), 1, 0, 1}}, T.op), Error);
}

TEST(FSetMembership, PureTorus) {
  Torus1 T;
  const GrouplessFSet S = GrouplessFSet::make(T.pt("1"), {{T.pt("t"), 1}}, T.op);
  const auto hit = fset_membership(T.pt("t^125"), S, 3);
  EXPECT_EQ(hit.tuple, (ExponentTuple{3}));
  for (const char* miss : {"t^3", "t^5*(t+1)"}) {
    const auto r = fset_membership(T.pt(miss), S, 3);
    EXPECT_FALSE(r.tuple.has_value()) << miss;
    EXPECT_TRUE(r.certified_absent) << miss;
  }
  // Beyond the cap and reachable: absence cannot be certified.
  const auto far = fset_membership(T.pt("t^15625"), S, 3);
  EXPECT_FALSE(far.tuple.has_value());
  EXPECT_FALSE(far.certified_absent);
}

TEST(FSetMembership, CoupledDecomposition) {
  const ExampleScenario sc = example1_scenario();
  SpanContext ctx(sc.tower, {sc.curve});
  const SpanSubgroup sg(ctx, sc.gamma);
  const auto& set0 = sc.decomposition.claimed.groupless.at(0);
  const LiftedFSet lifted = lift_fset(ctx, set0);
  for (int c : {1, 25}) {
    const auto r = fset_membership(ctx, sg.evaluate({c}), lifted, 3);
    EXPECT_TRUE(r.tuple.has_value()) << c;
  }
  for (int c : {5, 125}) {
    const auto r = fset_membership(ctx, sg.evaluate({c}), lifted, 3);
    EXPECT_FALSE(r.tuple.has_value()) << c;
    EXPECT_TRUE(r.certified_absent) << c;
  }
}

TEST(NormalizeCommonK, StridesTwoAndThree) {
  Torus1 T;
  const GrouplessFSet S = GrouplessFSet::make(T.pt("1"), {{T.pt("t"), 2}, {T.pt("t+1"), 3}}, T.op);
  const auto parts = normalize_common_k(S);
  ASSERT_EQ(parts.size(), 6u);
  for (const auto& part : parts) {
    for (const auto& term : part.terms()) EXPECT_EQ(term.stride, 6u);
  }
  const GrouplessFSet coupled =
      GrouplessFSet::coupled(T.pt("1"), {OrbitTerm{T.pt("t"), 1, 0, 0}, OrbitTerm{T.pt("t+1"), 2, 0, 0}}, T.op);
  EXPECT_THROW(normalize_common_k(coupled), InvalidArgument);
}

TEST(NormalizeCommonK, UnionMatchesInputOnCommonRange) {
  const ExampleScenario sc = example2_scenario();
  std::mt19937_64 rng(testing::kSeed);
  for (int instance = 0; instance < 20; ++instance) {
    const GrouplessFSet S = testing::random_fset(rng, sc);
    const auto cmp = testing::compare_normalized(sc, S, 8);
    EXPECT_FALSE(cmp.input.empty());
    EXPECT_EQ(cmp.input, cmp.output) << "instance " << instance;
  }
}

// Summands on pairwise coprime supports: every tuple gives a distinct point.
TEST(GrouplessFSet, InjectiveOnIndependentSummands) {
  Torus1 T;
  const GroupPtr G = make_group(T.L, BigInt(5), 2, {});
  const char* supports[] = {"t", "t+1", "t+2", "t^2+2", "t+3"};
  std::mt19937_64 rng(testing::kSeed);
  for (int instance = 0; instance < 20; ++instance) {
    std::vector<std::size_t> order{0, 1, 2, 3, 4};
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::pair<ProductPoint, std::uint64_t>> summands;
    const auto m = testing::uniform(rng, 1, 3);
    for (std::int64_t j = 0; j < m; ++j) {
      const TowerElem u = parse_tower(T.L, supports[order[static_cast<std::size_t>(j)]]);
      const TowerElem w = testing::uniform(rng, 0, 1) ? u : u.inverse();
      summands.emplace_back(ProductPoint::make(G, {w, tower_constant(T.L, 2)}, {}),
                            static_cast<std::uint64_t>(testing::uniform(rng, 1, 3)));
    }
    const GrouplessFSet S = GrouplessFSet::make(ProductPoint::identity(G), summands, T.op);
    SpanContext ctx(T.L, {});
    const LiftedFSet lifted = lift_fset(ctx, S);
    std::set<std::string> seen;
    std::size_t tuples = 0;
    for_each_tuple(S.var_count(), 3, [&](const ExponentTuple& n) {
      seen.insert(testing::span_key(fset_span_point(ctx, lifted, n)));
      ++tuples;
      return true;
    });
    EXPECT_EQ(seen.size(), tuples) << "instance " << instance;
  }
}

// Growing torus degree alone does not give injectivity: t^(5^a) * (t^5)^(5^b)
// takes the value t^30 at (a, b) = (2, 0) and (1, 1).
TEST(GrouplessFSet, GrowingDegreeIsNotEnoughForInjectivity) {
  Torus1 T;
  const GrouplessFSet S = GrouplessFSet::make(T.pt("1"), {{T.pt("t"), 1}, {T.pt("t^5"), 1}}, T.op);
  EXPECT_EQ(fset_point(S, {2, 0}), fset_point(S, {1, 1}));
  EXPECT_EQ(fset_point(S, {2, 0}), T.pt("t^30"));
}

TEST(FSetMembership, RoundTrip) {
  const ExampleScenario sc = example2_scenario();
  std::mt19937_64 rng(testing::kSeed + 1);
  for (int i = 0; i < 50; ++i) {
    SpanContext ctx(sc.tower, {sc.curve});
    const GrouplessFSet S = testing::random_fset(rng, sc);
    const LiftedFSet lifted = lift_fset(ctx, S);
    ExponentTuple n(S.var_count());
    for (auto& x : n) x = static_cast<std::uint64_t>(testing::uniform(rng, 0, 3));
    const SpanPoint x = fset_span_point(ctx, lifted, n);
    const FSetMembership r = fset_membership(ctx, x, lifted, 3);
    ASSERT_TRUE(r.tuple.has_value()) << "instance " << i;
    EXPECT_EQ(fset_span_point(ctx, lifted, *r.tuple), x) << "instance " << i;
  }
}

TEST(GeneralizedFSet, Validation) {
  const ExampleScenario sc = example2_scenario();
  const GrouplessFSet S = GrouplessFSet::singleton(sc.Q, sc.op);
  EXPECT_THROW(GeneralizedFSet::make(GroupHom::identity(sc.group), S, sc.gamma), ValidationError);
}

TEST(GeneralizedFSet, PullbackOfProjection) {
  const ExampleScenario sc = example2_scenario();
  std::set<CoeffVector> members;
  for (const auto& T : sc.generalized.claimed.generalized) {
    const PullbackResult r = pullback_enumerate(T, 130, 3);
    EXPECT_TRUE(r.certified);
    members.insert(r.members.begin(), r.members.end());
  }
  EXPECT_EQ(members, (std::set<CoeffVector>{{1}, {5}, {25}, {125}}));
}

}  // namespace
}  // namespace fsetkit
