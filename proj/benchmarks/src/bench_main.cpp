#include <benchmark/benchmark.h>

#include "fsetkit/intersector.hpp"

namespace {

using namespace fsetkit;

void BM_PolyMul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::uint32_t> a(n + 1), b(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    a[i] = static_cast<std::uint32_t>((3 * i + 1) % 5);
    b[i] = static_cast<std::uint32_t>((i * i + 2) % 5);
  }
  const Poly f(5, a), g(5, b);
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PolyMul)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_TowerInverse(benchmark::State& state) {
  const TowerPtr L = make_tower(parse_poly(5, "t^3+1"));
  const TowerElem x = parse_tower(L, "(t^7 + 3*t + 1)/(t^2 + 2) + (t^5 + t)*s");
  for (auto _ : state) benchmark::DoNotOptimize(x.inverse());
}
BENCHMARK(BM_TowerInverse);

void BM_ScalarMul(benchmark::State& state) {
  const ExampleScenario sc = example2_scenario();
  const ECPoint& P = sc.Q.elliptic()[0];
  const BigInt n(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ec_scalar_mul(n, P));
}
BENCHMARK(BM_ScalarMul)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_ReducedScalarMul(benchmark::State& state) {
  const ExampleScenario sc = example2_scenario();
  const auto places = inert_places(sc.tower, 3, 1);
  const ResiduePoint P = reduce_at(sc.Q.elliptic()[0], places.at(0));
  const BigInt n = BigInt(1) << 64;
  for (auto _ : state) benchmark::DoNotOptimize(ec_scalar_mul(n, P));
}
BENCHMARK(BM_ReducedScalarMul);

void BM_BruteIntersect(benchmark::State& state) {
  const ExampleScenario sc = state.range(1) == 1 ? example1_scenario() : example2_scenario();
  for (auto _ : state) {
    SpanContext ctx(sc.tower, {sc.curve});
    benchmark::DoNotOptimize(brute_intersect(ctx, sc.X, sc.gamma, state.range(0)));
  }
}
BENCHMARK(BM_BruteIntersect)->Args({130, 1})->Args({130, 2})->Args({1000, 1})->Unit(benchmark::kMillisecond);

void BM_DecompositionCertificate(benchmark::State& state) {
  const ExampleScenario sc = example1_scenario();
  for (auto _ : state) {
    SpanContext ctx(sc.tower, {sc.curve});
    benchmark::DoNotOptimize(check_certificate(ctx, sc.X, sc.gamma, sc.decomposition));
  }
}
BENCHMARK(BM_DecompositionCertificate)->Unit(benchmark::kMillisecond);

void BM_GeneralizedCertificate(benchmark::State& state) {
  const ExampleScenario sc = example2_scenario();
  for (auto _ : state) {
    SpanContext ctx(sc.tower, {sc.curve});
    benchmark::DoNotOptimize(check_certificate(ctx, sc.X, sc.gamma, sc.generalized));
  }
}
BENCHMARK(BM_GeneralizedCertificate)->Unit(benchmark::kMillisecond);

void BM_RecurrenceCoeffs(benchmark::State& state) {
  const IntPoly h = IntPoly::from_ints({5, -2, 1});
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(recurrence_coeffs(h, n));
}
BENCHMARK(BM_RecurrenceCoeffs)->Arg(25)->Arg(1000)->Arg(10000);

void BM_VerifyRecurrence(benchmark::State& state) {
  const ExampleScenario sc = example2_scenario();
  const IntPoly h = IntPoly::from_ints({5, -2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(verify_recurrence(sc.curve, sc.Q.elliptic()[0], h, 25, sc.tower));
}
BENCHMARK(BM_VerifyRecurrence)->Unit(benchmark::kMillisecond);

void BM_TorusMembership(benchmark::State& state) {
  const TowerPtr L = make_tower(parse_poly(5, "t^3+1"));
  const GroupPtr G = make_group(L, BigInt(5), 2, {});
  const Subgroup gamma(G, {ProductPoint::make(G, {parse_tower(L, "t*(t+1)"), parse_tower(L, "t+2")}, {}),
                           ProductPoint::make(G, {parse_tower(L, "t^2+2"), parse_tower(L, "3*t")}, {})});
  const TorusPoint x = evaluate_torus(gamma, {17, -9});
  for (auto _ : state) benchmark::DoNotOptimize(torus_membership(x, gamma));
}
BENCHMARK(BM_TorusMembership);

void BM_NormalizeEnumerate(benchmark::State& state) {
  const ExampleScenario sc = example2_scenario();
  const GrouplessFSet S = GrouplessFSet::make(sc.Q1, {{sc.Q, 2}, {sc.Q2, 3}}, sc.op);
  for (auto _ : state) {
    SpanContext ctx(sc.tower, {sc.curve});
    std::size_t n = 0;
    for (const auto& part : normalize_common_k(S))
      n += enumerate_fset_exponent_capped(ctx, lift_fset(ctx, part), static_cast<std::uint64_t>(state.range(0))).size();
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_NormalizeEnumerate)->Arg(8)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
