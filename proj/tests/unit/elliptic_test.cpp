#include <gtest/gtest.h>

#include "fsetkit/frobenius.hpp"
#include "oracles.hpp"

namespace fsetkit {
namespace {

struct Curves {
  TowerPtr L1 = make_tower(parse_poly(5, "t^3+1"));
  TowerPtr L2 = make_tower(parse_poly(5, "t^3+t"));
  CurveParams E1 = make_curve(5, 0, 1);
  CurveParams E2 = make_curve(5, 1, 0);
};

static_assert(detail::kCheckGroupLaw, "tests run with the curve equation checked after every group operation");

TEST(Curve, SingularCurvesRejected) {
  EXPECT_THROW(make_curve(5, 0, 0), Error);
  EXPECT_THROW(make_curve(7, -3, 2), Error);  // x^3 - 3x + 2 has a double root
  EXPECT_NO_THROW(make_curve(7, 1, 1));
}

TEST(Curve, DoublingAndTripling) {
  Curves c;
  const ECPoint P = ECPoint::affine(c.E1, tower_constant(c.L1, 0), tower_constant(c.L1, 1));
  const ECPoint twoP = ec_add(P, P);
  ASSERT_FALSE(twoP.is_infinity());
  EXPECT_EQ(twoP.x(), tower_constant(c.L1, 0));
  EXPECT_EQ(twoP.y(), tower_constant(c.L1, 4));
  EXPECT_TRUE(ec_scalar_mul(BigInt(3), P).is_infinity());
  EXPECT_EQ(ec_scalar_mul(BigInt(-1), P), ec_neg(P));
  EXPECT_EQ(ec_scalar_mul(BigInt(2), P), twoP);
}

TEST(Curve, OffCurvePointRejected) {
  Curves c;
  EXPECT_THROW(ECPoint::affine(c.E1, tower_constant(c.L1, 1), tower_constant(c.L1, 1)), ValidationError);
  EXPECT_THROW(ECPoint::affine(c.E1, tower_t(c.L1), tower_t(c.L1)), ValidationError);
}

TEST(Curve, GenericPointOnTower) {
  Curves c;
  EXPECT_NO_THROW(ECPoint::affine(c.E1, tower_t(c.L1), tower_s(c.L1)));
  EXPECT_NO_THROW(ECPoint::affine(c.E2, tower_t(c.L2), tower_s(c.L2)));
  EXPECT_THROW(ECPoint::affine(c.E2, tower_t(c.L1), tower_s(c.L1)), ValidationError);
}

TEST(Curve, MixedCurvesMismatch) {
  Curves c;
  const ECPoint P = ECPoint::infinity(c.E1), Q = ECPoint::infinity(c.E2);
  EXPECT_THROW(ec_add(P, Q), Mismatch);
}

TEST(Curve, ScalarMultiplicationIsRepeatedAddition) {
  Curves c;
  const ECPoint P = ECPoint::affine(c.E2, tower_t(c.L2), tower_s(c.L2));
  ECPoint acc = ECPoint::infinity(c.E2);
  for (int n = 0; n <= 9; ++n) {
    EXPECT_EQ(ec_scalar_mul(BigInt(n), P), acc) << n;
    EXPECT_TRUE(acc.on_curve());
    acc = ec_add(acc, P);
  }
}

TEST(Curve, ScalarMultiplicationIsLinear) {
  Curves c;
  std::mt19937_64 rng(testing::kSeed);
  for (const auto& [L, E] : {std::pair{c.L1, c.E1}, std::pair{c.L2, c.E2}}) {
    const auto pool = relation_samples(ECPoint::affine(E, tower_t(L), tower_s(L)), L, 8, testing::kSeed);
    for (int i = 0; i < 25; ++i) {
      const ECPoint& P = pool[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<std::int64_t>(pool.size()) - 1))];
      const BigInt m(testing::uniform(rng, -6, 6)), n(testing::uniform(rng, -6, 6));
      EXPECT_EQ(ec_scalar_mul(BigInt(m + n), P), ec_add(ec_scalar_mul(m, P), ec_scalar_mul(n, P)))
          << "m=" << m << " n=" << n << " P=" << to_string(P);
    }
  }
}

TEST(Curve, PointCountsMatchExhaustiveSearch) {
  for (auto [a4, a6] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{2, 3}, std::pair{1, 1}, std::pair{4, 2}}) {
    for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
      CurveParams E;
      try {
        E = make_curve(p, a4, a6);
      } catch (const Error&) {
        continue;
      }
      EXPECT_EQ(count_points(E, BigInt(p)), BigInt(testing::naive_point_count(p, a4, a6)))
          << "p=" << p << " a4=" << a4 << " a6=" << a6;
    }
  }
}

TEST(Curve, WorkedExampleCounts) {
  Curves c;
  EXPECT_EQ(count_points(c.E1, BigInt(5)), BigInt(6));
  EXPECT_EQ(count_points(c.E2, BigInt(5)), BigInt(4));
  EXPECT_EQ(rational_points(c.E1, c.L1).size() + 1, 6u);
  EXPECT_EQ(rational_points(c.E2, c.L2).size() + 1, 4u);
}

TEST(Curve, ReductionCommutesWithAddition) {
  Curves c;
  const ECPoint P = ECPoint::affine(c.E1, tower_t(c.L1), tower_s(c.L1));
  const ECPoint Q = ec_frobenius(P);
  const ECPoint PQ = ec_add(P, Q);
  std::size_t good = 0;
  for (std::size_t degree = 1; degree <= 2; ++degree) {
    for (const auto& v : inert_places(c.L1, degree, 4)) {
      // Places where a coordinate has a pole are skipped.
      try {
        const ResiduePoint r = reduce_at(PQ, v);
        EXPECT_EQ(r, ec_add(reduce_at(P, v), reduce_at(Q, v)));
        ++good;
      } catch (const DivisionByZero&) {
      }
    }
  }
  EXPECT_GE(good, 3u);
}

}  // namespace
}  // namespace fsetkit
