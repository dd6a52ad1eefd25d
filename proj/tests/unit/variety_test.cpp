#include <gtest/gtest.h>

#include "fsetkit/intersector.hpp"
#include "oracles.hpp"

namespace fsetkit {
namespace {

using testing::uniform;

TEST(Laurent, ParseAndPrint) {
  EXPECT_EQ(to_string(LaurentPoly::parse(5, 2, "x2 - x1 - 1")), "x2 - x1 - 1");
  EXPECT_EQ(to_string(LaurentPoly::parse(5, 2, "x1*x2 - 1")), "x1*x2 - 1");
  EXPECT_EQ(to_string(LaurentPoly::parse(5, 2, "(x1 + 1)^2")), "x1^2 + 2*x1 + 1");
  EXPECT_EQ(to_string(LaurentPoly::parse(5, 2, "6*x1 + 5")), "x1");
  const LaurentPoly f = LaurentPoly::parse(5, 3, "x1/x2 + x3^-2");
  EXPECT_EQ(f.min_exponent(), (Exponent{0, -1, -2}));
}

TEST(Laurent, ParseErrors) {
  EXPECT_THROW(LaurentPoly::parse(5, 2, "x3"), ParseError);
  EXPECT_THROW(LaurentPoly::parse(5, 2, "1/(x1+1)"), ParseError);
  EXPECT_THROW(LaurentPoly::parse(5, 2, "(x1+x2)^-1"), ParseError);
  EXPECT_THROW(LaurentPoly::parse(5, 2, "x1/0"), ParseError);
}

LaurentPoly random_laurent(std::mt19937_64& rng, std::size_t vars, int terms) {
  LaurentPoly f(5, vars);
  for (int i = 0; i < terms; ++i) {
    Exponent e(vars);
    for (auto& x : e) x = uniform(rng, -2, 2);
    f = f + LaurentPoly::monomial(5, e, uniform(rng, 1, 4));
  }
  return f;
}

TEST(Laurent, ClearingIsInvariantUnderMonomialMultiples) {
  const TowerPtr L = make_tower(parse_poly(5, "t^3+1"));
  const char* units[] = {"t", "t+1", "2", "1/(t+2)", "t^2+t+1"};
  std::mt19937_64 rng(testing::kSeed);
  for (int i = 0; i < 100; ++i) {
    const std::size_t vars = static_cast<std::size_t>(uniform(rng, 1, 3));
    const LaurentPoly f = random_laurent(rng, vars, static_cast<int>(uniform(rng, 1, 4)));
    if (f.is_zero()) continue;
    Exponent m(vars);
    for (auto& x : m) x = uniform(rng, -3, 3);
    std::vector<TowerElem> x;
    for (std::size_t j = 0; j < vars; ++j) x.push_back(parse_tower(L, units[uniform(rng, 0, 4)]));
    const LaurentPoly g = f * LaurentPoly::monomial(5, m, uniform(rng, 1, 4));
    const TowerElem a = f.evaluate_cleared(x), b = g.evaluate_cleared(x);
    EXPECT_EQ(a.is_zero(), b.is_zero()) << to_string(f);
    if (!a.is_zero()) {
      EXPECT_TRUE(tower_is_constant(b / a)) << to_string(f);
    }
  }
}

TEST(Laurent, MonomialInverse) {
  const LaurentPoly m = LaurentPoly::parse(5, 2, "3*x1^2/x2");
  EXPECT_EQ(m * m.monomial_inverse(), LaurentPoly::constant(5, 2, 1));
  EXPECT_THROW(LaurentPoly::parse(5, 2, "x1 + 1").monomial_inverse(), InvalidArgument);
}

TEST(Subvariety, RejectsEmptySystem) {
  const ExampleScenario sc = example1_scenario();
  EXPECT_THROW(Subvariety::make(sc.group, {}, {std::nullopt}), ValidationError);
  EXPECT_TRUE(Subvariety::full(sc.group).is_full());
  EXPECT_TRUE(sc.X.split());
}

TEST(Subvariety, ContainsWorkedPoints) {
  const ExampleScenario sc = example1_scenario();
  EXPECT_TRUE(contains(sc.X, sc.Q));
  EXPECT_TRUE(contains(sc.X, sc.Q1));
  EXPECT_FALSE(contains(sc.X, sc.Q2));
  EXPECT_FALSE(contains(sc.X, sc.Q + sc.Q));
  EXPECT_TRUE(contains(sc.X, frob_apply(sc.op, sc.Q, 1)));
}

TEST(Subvariety, EllipticConstraint) {
  const ExampleScenario sc = example1_scenario();
  CurveSystem sys;
  sys.equations.push_back(CurvePoly::parse(sc.tower, 1, "X1 - t"));
  const Subvariety Y = Subvariety::make(sc.group, {}, {sys});
  EXPECT_FALSE(Y.split());
  EXPECT_TRUE(contains_elliptic(Y, 0, sc.Q.elliptic()[0]));
  EXPECT_TRUE(contains_elliptic(Y, 0, ec_neg(sc.Q.elliptic()[0])));
  EXPECT_FALSE(contains_elliptic(Y, 0, ECPoint::infinity(sc.curve)));
  EXPECT_THROW(product_stabilizer(Y), Unsupported);
  EXPECT_THROW(CurvePoly::parse(sc.tower, 1, "X2"), ParseError);
}

TEST(Stabilizer, WorkedDimensions) {
  EXPECT_EQ(torus_stabilizer(LaurentPoly::parse(5, 2, "x2 - x1 - 1")).dimension, 0u);
  const StabilizerInfo line = torus_stabilizer(LaurentPoly::parse(5, 2, "x1*x2 - 1"));
  EXPECT_EQ(line.dimension, 1u);
  ASSERT_EQ(line.subtorus_cocharacters.size(), 1u);
  const IntVector& w = line.subtorus_cocharacters[0];
  EXPECT_EQ(w[0] + w[1], 0);
  const ExampleScenario sc = example1_scenario();
  const StabilizerInfo prod = product_stabilizer(sc.X);
  EXPECT_EQ(prod.dimension, 1u);
  EXPECT_EQ(prod.full_elliptic_factors, (std::vector<std::size_t>{0}));
}

// g = l^w for a cocharacter w must scale f by a single monomial factor.
TEST(Stabilizer, CocharactersFixTheHypersurface) {
  const TowerPtr L = make_tower(parse_poly(5, "t^3+1"));
  const TowerElem l = parse_tower(L, "t+2");
  const char* units[] = {"t", "t+1", "3", "t^2+1"};
  std::mt19937_64 rng(testing::kSeed + 1);
  for (int i = 0; i < 60; ++i) {
    const std::size_t vars = static_cast<std::size_t>(uniform(rng, 1, 3));
    const LaurentPoly f = random_laurent(rng, vars, static_cast<int>(uniform(rng, 1, 3)));
    if (f.is_zero()) continue;
    const StabilizerInfo st = torus_stabilizer(f);

    std::vector<std::vector<BigInt>> diffs;
    const Exponent& m0 = f.terms().begin()->first;
    for (const auto& [m, c] : f.terms()) {
      std::vector<BigInt> row;
      for (std::size_t j = 0; j < vars; ++j) row.emplace_back(m[j] - m0[j]);
      diffs.push_back(row);
    }
    EXPECT_EQ(st.dimension, vars - testing::naive_rank(diffs)) << to_string(f);
    EXPECT_EQ(st.subtorus_cocharacters.size(), st.dimension);

    std::vector<TowerElem> x;
    for (std::size_t j = 0; j < vars; ++j) x.push_back(parse_tower(L, units[uniform(rng, 0, 3)]));
    const TowerElem fx = f.evaluate_cleared(x);
    for (const IntVector& w : st.subtorus_cocharacters) {
      std::vector<TowerElem> y = x;
      for (std::size_t j = 0; j < vars; ++j) y[j] = y[j] * l.pow(w[j]);
      const TowerElem fy = f.evaluate_cleared(y);
      EXPECT_EQ(fx.is_zero(), fy.is_zero());
      if (!fx.is_zero()) {
        // The ratio is a power of l alone.
        const TowerElem r = fy / fx;
        bool power_of_l = false;
        for (int k = -40; k <= 40 && !power_of_l; ++k) power_of_l = r == l.pow(k);
        EXPECT_TRUE(power_of_l) << to_string(f);
      }
    }
  }
}

// f = (y - r)(y - r') with y = x^u and u_0 = 1. Points with y = r lie on f = 0,
// and so do their translates by the stabilizer's subtorus.
TEST(Stabilizer, SubtorusPreservesPointsOnTheHypersurface) {
  const TowerPtr L = make_tower(parse_poly(5, "t^3+1"));
  const TowerElem l = parse_tower(L, "t+2");
  const char* units[] = {"t", "t+1", "3", "t^2+1", "1/(t+4)"};
  std::mt19937_64 rng(testing::kSeed + 2);
  for (int i = 0; i < 20; ++i) {
    const std::size_t vars = static_cast<std::size_t>(uniform(rng, 2, 3));
    Exponent u(vars, 1);
    for (std::size_t j = 1; j < vars; ++j) u[j] = uniform(rng, -2, 2);
    const std::int64_t r = uniform(rng, 1, 4);
    std::int64_t r2 = uniform(rng, 1, 3);
    if (r2 >= r) ++r2;
    const LaurentPoly y = LaurentPoly::monomial(5, u);
    const LaurentPoly f = (y - LaurentPoly::constant(5, vars, r)) * (y - LaurentPoly::constant(5, vars, r2));
    const Subvariety X = Subvariety::make(make_group(L, BigInt(5), vars, {}), {f}, {});

    TorusPoint x;
    x.coords.push_back(tower_constant(L, r));
    for (std::size_t j = 1; j < vars; ++j) {
      x.coords.push_back(parse_tower(L, units[uniform(rng, 0, 4)]));
      x.coords[0] = x.coords[0] * x.coords[j].pow(-u[j]);
    }
    ASSERT_TRUE(contains_torus(X, x)) << to_string(f);

    const StabilizerInfo st = torus_stabilizer(f);
    EXPECT_EQ(st.dimension, vars - 1) << to_string(f);
    for (const IntVector& w : st.subtorus_cocharacters) {
      BigInt dot = 0;
      for (std::size_t j = 0; j < vars; ++j) dot += w[j] * u[j];
      EXPECT_EQ(dot, 0) << to_string(f);
    }
    for (int k = 0; k < 20; ++k) {
      IntVector w(vars, BigInt(0));
      for (const IntVector& b : st.subtorus_cocharacters) {
        const BigInt a = uniform(rng, -2, 2);
        for (std::size_t j = 0; j < vars; ++j) w[j] += a * b[j];
      }
      TorusPoint g = x;
      for (std::size_t j = 0; j < vars; ++j) g.coords[j] = g.coords[j] * l.pow(w[j]);
      EXPECT_TRUE(contains_torus(X, g)) << to_string(f) << " k=" << k;
    }
  }
}

TEST(Subvariety, MonomialMultipleEquationChangesNothing) {
  const TowerPtr L = make_tower(parse_poly(5, "t^3+1"));
  const char* units[] = {"t", "t+1", "2", "1/(t+2)", "t^2+t+1"};
  std::mt19937_64 rng(testing::kSeed + 3);
  for (int i = 0; i < 20; ++i) {
    const std::size_t vars = static_cast<std::size_t>(uniform(rng, 1, 3));
    const GroupPtr G = make_group(L, BigInt(5), vars, {});
    LaurentPoly f = random_laurent(rng, vars, static_cast<int>(uniform(rng, 1, 3)));
    if (f.is_zero()) f = LaurentPoly::constant(5, vars, 1);
    TorusPoint x;
    if (i % 2 == 0) {
      // Constant coordinates: f(x) lies in F_5, and f - f(x) passes through x.
      std::int64_t value = 0;
      for (std::size_t j = 0; j < vars; ++j) x.coords.push_back(tower_constant(L, uniform(rng, 1, 4)));
      for (std::int64_t c = 0; c < 5; ++c) {
        if ((f - LaurentPoly::constant(5, vars, c)).evaluate_cleared(x.coords).is_zero()) value = c;
      }
      f = f - LaurentPoly::constant(5, vars, value);
      if (f.is_zero()) continue;
      ASSERT_TRUE(f.evaluate_cleared(x.coords).is_zero()) << to_string(f);
    } else {
      for (std::size_t j = 0; j < vars; ++j) x.coords.push_back(parse_tower(L, units[uniform(rng, 0, 4)]));
    }
    Exponent m(vars);
    for (auto& e : m) e = uniform(rng, -3, 3);
    const LaurentPoly g = f * LaurentPoly::monomial(5, m, uniform(rng, 1, 4));
    const Subvariety X = Subvariety::make(G, {f}, {});
    const Subvariety Y = Subvariety::make(G, {f, g}, {});
    EXPECT_EQ(contains_torus(X, x), contains_torus(Y, x)) << to_string(f);
    EXPECT_EQ(torus_stabilizer(f).dimension, torus_stabilizer(g).dimension) << to_string(f);
  }
}

TEST(Stabilizer, FreeEllipticFactorsAreCounted) {
  const TowerPtr L = make_tower(parse_poly(5, "t^3+1"));
  const CurveParams E = make_curve(5, 0, 1);
  for (std::size_t curves = 0; curves <= 2; ++curves) {
    const GroupPtr G = make_group(L, BigInt(5), 2, std::vector<CurveParams>(curves, E));
    const Subvariety X =
        Subvariety::make(G, {LaurentPoly::parse(5, 2, "x2 - x1 - 1")}, std::vector<std::optional<CurveSystem>>(curves));
    const StabilizerInfo st = product_stabilizer(X);
    EXPECT_GE(st.dimension, curves);
    EXPECT_EQ(st.full_elliptic_factors.size(), curves);
  }
}

}  // namespace
}  // namespace fsetkit
