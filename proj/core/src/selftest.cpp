#include "fsetkit/selftest.hpp"

#include <random>

#include "fsetkit/intersector.hpp"

namespace fsetkit {

namespace {

struct Recorder {
  SuiteResult r;

  explicit Recorder(std::string name) { r.name = std::move(name); }
  void check(bool ok, const std::string& what) {
    ++r.samples;
    if (!ok) {
      if (r.failures++ == 0) r.first_failure = what;
    }
  }
};

struct CurveCase {
  TowerPtr tower;
  CurveParams curve;
  std::vector<ECPoint> pool;
};

std::vector<CurveCase> curve_cases(std::uint64_t seed) {
  std::vector<CurveCase> out;
  for (auto [d, a4, a6] : {std::tuple{"t^3+1", 0, 1}, std::tuple{"t^3+t", 1, 0}}) {
    TowerPtr tower = make_tower(parse_poly(5, d));
    const CurveParams E = make_curve(5, a4, a6);
    const ECPoint P = ECPoint::affine(E, tower_t(tower), tower_s(tower));
    std::vector<ECPoint> pool = relation_samples(P, tower, 12, seed);
    for (const auto& R : rational_points(E, tower)) pool.push_back(R);
    pool.push_back(ECPoint::infinity(E));
    out.push_back(CurveCase{tower, E, std::move(pool)});
  }
  return out;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[rng() % v.size()];
}

std::vector<ProductPoint> product_pool(const CurveCase& cc, const GroupPtr& G, std::mt19937_64& rng) {
  const char* units[] = {"t", "t+1", "2*t+3", "t^2+t+1", "1/t", "3", "(t+2)/(t^2+1)"};
  std::vector<ProductPoint> pool;
  for (int i = 0; i < 12; ++i) {
    std::vector<TowerElem> torus;
    for (std::size_t j = 0; j < G->torus_dim; ++j) torus.push_back(parse_tower(cc.tower, units[rng() % 7]));
    pool.push_back(ProductPoint::make(G, std::move(torus), {pick(rng, cc.pool)}));
  }
  return pool;
}

}  // namespace

SuiteResult suite_curve_group_law(std::uint64_t seed, std::size_t samples) {
  Recorder rec("curve group law");
  std::mt19937_64 rng(seed);
  const auto cases = curve_cases(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const CurveCase& cc = cases[k % cases.size()];
    const ECPoint &P = pick(rng, cc.pool), &Q = pick(rng, cc.pool), &R = pick(rng, cc.pool);
    const ECPoint O = ECPoint::infinity(cc.curve);
    const ECPoint PQ = ec_add(P, Q);
    const std::string at = "P=" + to_string(P) + " Q=" + to_string(Q);
    rec.check(PQ.on_curve(), "closure at " + at);
    rec.check(PQ == ec_add(Q, P), "commutativity at " + at);
    rec.check(ec_add(PQ, R) == ec_add(P, ec_add(Q, R)), "associativity at " + at + " R=" + to_string(R));
    rec.check(ec_add(P, O) == P, "identity at " + at);
    rec.check(ec_add(P, ec_neg(P)).is_infinity(), "inverse at " + at);
  }
  return rec.r;
}

SuiteResult suite_frobenius_additivity(std::uint64_t seed, std::size_t samples) {
  Recorder rec("Frobenius additivity");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const auto cases = curve_cases(seed);
  const FrobeniusOp op(5, 5);
  for (std::size_t k = 0; k < samples; ++k) {
    const CurveCase& cc = cases[k % cases.size()];
    const ECPoint &P = pick(rng, cc.pool), &Q = pick(rng, cc.pool);
    const ECPoint FP = frob_apply(op, P, 1);
    rec.check(FP.on_curve(), "F(P) off the curve at " + to_string(P));
    rec.check(frob_apply(op, ec_add(P, Q), 1) == ec_add(FP, frob_apply(op, Q, 1)),
              "F(P+Q) != F(P)+F(Q) at P=" + to_string(P) + " Q=" + to_string(Q));
  }
  return rec.r;
}

SuiteResult suite_product_group_law(std::uint64_t seed, std::size_t samples) {
  Recorder rec("product group law");
  std::mt19937_64 rng(seed + 1);
  const auto cases = curve_cases(seed);
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const GroupPtr G = make_group(cases[c].tower, 5, 2, {cases[c].curve});
    const auto pool = product_pool(cases[c], G, rng);
    const FrobeniusOp op(5, 5);
    for (std::size_t k = c; k < samples; k += cases.size()) {
      const ProductPoint &P = pick(rng, pool), &Q = pick(rng, pool), &R = pick(rng, pool);
      const std::string at = to_string(P) + ", " + to_string(Q);
      rec.check(P + Q == Q + P, "commutativity at " + at);
      rec.check((P + Q) + R == P + (Q + R), "associativity at " + at);
      rec.check((P - P).is_identity(), "inverse at " + at);
      rec.check(frob_apply(op, P + Q, 1) == frob_apply(op, P, 1) + frob_apply(op, Q, 1), "F additivity at " + at);
    }
  }
  return rec.r;
}

SuiteResult suite_hom_additivity(std::uint64_t seed, std::size_t samples) {
  Recorder rec("homomorphism additivity");
  std::mt19937_64 rng(seed + 2);
  const auto cases = curve_cases(seed);
  auto small = [&] { return BigInt(static_cast<int>(rng() % 5) - 2); };
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const GroupPtr G = make_group(cases[c].tower, 5, 2, {cases[c].curve});
    const auto pool = product_pool(cases[c], G, rng);
    for (std::size_t k = c; k < samples; k += cases.size()) {
      const GroupHom h =
          GroupHom::make(G, G, {{small(), small()}, {small(), small()}}, {{EndoEntry{small(), small()}}});
      const ProductPoint &P = pick(rng, pool), &Q = pick(rng, pool);
      const ProductPoint hP = hom_apply(h, P);
      bool closed = true;
      for (const auto& e : hP.elliptic()) closed = closed && e.on_curve();
      rec.check(closed, "h(P) off the curve at " + to_string(P));
      rec.check(hom_apply(h, P + Q) == hP + hom_apply(h, Q), "h(P+Q) != h(P)+h(Q) at " + to_string(P));
    }
  }
  return rec.r;
}

SuiteResult suite_recurrence_shift(std::uint64_t seed, std::size_t samples) {
  Recorder rec("recurrence shift");
  std::mt19937_64 rng(seed + 3);
  for (std::size_t k = 0; k < samples; ++k) {
    const std::size_t m = 1 + rng() % 4;
    std::vector<BigInt> c;
    for (std::size_t i = 0; i < m; ++i) c.emplace_back(static_cast<int>(rng() % 21) - 10);
    c.emplace_back(1);
    const IntPoly h(c);
    const std::uint64_t n = rng() % 40;
    const IntVector a = recurrence_coeffs(h, n), b = recurrence_coeffs(h, n + 1);
    IntVector expect(m);
    for (std::size_t i = 0; i < m; ++i) expect[i] = (i ? a[i - 1] : BigInt(0)) - a[m - 1] * h.coeff(i);
    rec.check(b == expect, "a_{n+1} mismatch for h=" + h.to_string() + " n=" + std::to_string(n));
  }
  return rec.r;
}

std::vector<SuiteResult> run_property_suites(std::uint64_t seed) {
  return {suite_curve_group_law(seed), suite_frobenius_additivity(seed), suite_product_group_law(seed),
          suite_hom_additivity(seed), suite_recurrence_shift(seed)};
}

}  // namespace fsetkit
