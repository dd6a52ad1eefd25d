#include <gtest/gtest.h>

#include "fsetkit/intersector.hpp"
#include "oracles.hpp"

namespace fsetkit {
namespace {

using testing::uniform;

std::vector<CoeffVector> coeffs_of(const IntersectionResult& r) {
  std::vector<CoeffVector> out;
  for (const auto& w : r.witnesses) out.push_back(w.coeffs);
  return out;
}

const std::vector<CoeffVector> kPowersOfFive{{1}, {5}, {25}, {125}};

TEST(BruteIntersect, SupersingularExample) {
  const ExampleScenario sc = example1_scenario();
  SpanContext ctx(sc.tower, {sc.curve});
  const IntersectionResult r = brute_intersect(ctx, sc.X, sc.gamma, 130);
  EXPECT_EQ(coeffs_of(r), kPowersOfFive);
  for (const auto& w : r.witnesses) EXPECT_EQ(ctx.materialize(w.point), evaluate(sc.gamma, w.coeffs));
}

TEST(BruteIntersect, OrdinaryExample) {
  const ExampleScenario sc = example2_scenario();
  SpanContext ctx(sc.tower, {sc.curve});
  EXPECT_EQ(coeffs_of(brute_intersect(ctx, sc.X, sc.gamma, 130)), kPowersOfFive);
}

TEST(BruteIntersect, ThreadCountDoesNotChangeResult) {
  const ExampleScenario sc = example1_scenario();
  SpanContext a(sc.tower, {sc.curve}), b(sc.tower, {sc.curve});
  EXPECT_EQ(coeffs_of(brute_intersect(a, sc.X, sc.gamma, 130, 1)),
            coeffs_of(brute_intersect(b, sc.X, sc.gamma, 130, 4)));
}

TEST(BruteIntersect, FullGroupReturnsWholeBox) {
  const ExampleScenario sc = example2_scenario();
  const char* units[] = {"t", "t+1", "t+2", "t^2+2", "1/t"};
  std::mt19937_64 rng(testing::kSeed);
  for (int i = 0; i < 6; ++i) {
    const auto rank = static_cast<std::size_t>(uniform(rng, 1, 3));
    const std::int64_t B = uniform(rng, 1, 2);
    std::vector<ProductPoint> gens;
    for (std::size_t j = 0; j < rank; ++j) {
      gens.push_back(ProductPoint::make(sc.group,
                                        {parse_tower(sc.tower, units[uniform(rng, 0, 4)]),
                                         parse_tower(sc.tower, units[uniform(rng, 0, 4)])},
                                        {j == 0 ? sc.Q.elliptic()[0] : ECPoint::infinity(sc.curve)}));
    }
    SpanContext ctx(sc.tower, {sc.curve});
    const IntersectionResult r = brute_intersect(ctx, Subvariety::full(sc.group), Subgroup(sc.group, gens), B);
    std::uint64_t expected = 1;
    for (std::size_t j = 0; j < rank; ++j) expected *= static_cast<std::uint64_t>(2 * B + 1);
    EXPECT_EQ(r.witnesses.size(), expected);
  }
}

TEST(BruteIntersect, BudgetEnforced) {
  const ExampleScenario sc = example1_scenario();
  SpanContext ctx(sc.tower, {sc.curve});
  EXPECT_THROW(brute_intersect(ctx, sc.X, sc.gamma, 130, 1, 100), ResourceLimit);
}

TEST(Certificate, VerdictCodes) {
  EXPECT_EQ(exit_code(Verdict::Pass), 0);
  EXPECT_EQ(exit_code(Verdict::Fail), 2);
  EXPECT_EQ(exit_code(Verdict::PassBounded), 3);
  EXPECT_EQ(to_string(Verdict::PassBounded), "PASS-BOUNDED");
}

TEST(Certificate, DecompositionPasses) {
  const ExampleScenario sc = example1_scenario();
  SpanContext ctx(sc.tower, {sc.curve});
  const CertificateReport r = check_certificate(ctx, sc.X, sc.gamma, sc.decomposition);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_EQ(r.witnesses, kPowersOfFive);
}

TEST(Certificate, GeneralizedPassesOnBothCurves) {
  for (const ExampleScenario& sc : {example1_scenario(), example2_scenario()}) {
    SpanContext ctx(sc.tower, {sc.curve});
    EXPECT_EQ(check_certificate(ctx, sc.X, sc.gamma, sc.generalized).verdict, Verdict::Pass) << sc.name;
  }
}

TEST(Certificate, EmptyClaimFails) {
  const ExampleScenario sc = example1_scenario();
  SpanContext ctx(sc.tower, {sc.curve});
  const CertificateReport r = check_certificate(ctx, sc.X, sc.gamma, Certificate{});
  EXPECT_EQ(r.verdict, Verdict::Fail);
  ASSERT_EQ(r.completeness_failures.size(), 4u);
  for (const auto& f : r.completeness_failures) EXPECT_TRUE(f.certified_absent);
}

TEST(Certificate, UnsoundClaimFails) {
  const ExampleScenario sc = example1_scenario();
  SpanContext ctx(sc.tower, {sc.curve});
  Certificate cert = sc.decomposition;
  cert.claimed.groupless.push_back(GrouplessFSet::singleton(sc.Q + sc.Q, sc.op));
  const CertificateReport r = check_certificate(ctx, sc.X, sc.gamma, cert);
  EXPECT_EQ(r.verdict, Verdict::Fail);
  ASSERT_EQ(r.soundness_failures.size(), 1u);
  EXPECT_EQ(r.soundness_failures[0].set, "groupless[2]");
}

TEST(Certificate, TautologicalCertificatePasses) {
  for (const auto& [sc, B] : {std::pair{example1_scenario(), 130}, std::pair{example2_scenario(), 30}}) {
    SpanContext ctx(sc.tower, {sc.curve});
    const IntersectionResult found = brute_intersect(ctx, sc.X, sc.gamma, B);
    Certificate cert = tautological_certificate(ctx, found, sc.op, 3);
    cert.bound = B;
    const CertificateReport r = check_certificate(ctx, sc.X, sc.gamma, cert, found);
    EXPECT_EQ(r.verdict, Verdict::Pass) << sc.name;
  }
}

TEST(DecompositionIdentity, HoldsThroughThree) {
  const auto checks = check_decomposition_identity(example1_scenario(), 3);
  ASSERT_EQ(checks.size(), 4u);
  for (const auto& c : checks) {
    EXPECT_TRUE(c.holds) << "n=" << c.n;
    EXPECT_GT(c.places, 0u);
  }
  EXPECT_TRUE(checks[0].explicit_checked);
  EXPECT_TRUE(checks[1].explicit_checked);
}

}  // namespace
}  // namespace fsetkit
