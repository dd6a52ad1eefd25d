// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "fsetkit/selftest.hpp"
#include "generators.hpp"

namespace {

using namespace fsetkit;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0: no time limit
  std::function<Outcome()> body;
};

std::string coeff_list(const IntersectionResult& r) {
  std::string s;
  for (const auto& w : r.witnesses) s += (s.empty() ? "" : " ") + to_string(w.coeffs);
  return s;
}

Outcome frobenius_relations() {
  Outcome o;
  std::ostringstream d;
  for (const ExampleScenario& sc : {example1_scenario(), example2_scenario()}) {
    const IntPoly expected = sc.name == "example1" ? IntPoly::from_ints({5, 0, 1}) : IntPoly::from_ints({5, -2, 1});
    const IntPoly h = char_poly_frobenius(sc.curve, sc.op.q());
    const auto samples = relation_samples(sc.Q.elliptic()[0], sc.tower, 20, kDefaultSeed);
    const bool ok = h == expected && samples.size() >= 20 && verify_relation(h, sc.op, samples);
    o.pass = o.pass && ok;
    d << (d.tellp() > 0 ? "; " : "") << sc.name << " charpoly " << h.to_string() << " on " << samples.size()
      << " points";
  }
  o.detail = d.str();
  return o;
}

Outcome reproduce_intersection(const ExampleScenario& sc) {
  SpanContext ctx(sc.tower, {sc.curve});
  const IntersectionResult r = brute_intersect(ctx, sc.X, sc.gamma, 130);
  bool negative = false;
  for (const auto& w : r.witnesses)
    for (auto c : w.coeffs) negative = negative || c < 0;
  std::vector<CoeffVector> got;
  for (const auto& w : r.witnesses) got.push_back(w.coeffs);
  const bool exact = got == std::vector<CoeffVector>{{1}, {5}, {25}, {125}};
  return {exact && !negative, "B=130 witnesses " + coeff_list(r) + (negative ? ", negative witness present" : ", none negative")};
}

Outcome decomposition_certificate() {
  const ExampleScenario sc = example1_scenario();
  SpanContext ctx(sc.tower, {sc.curve});
  Certificate cert = sc.decomposition;
  cert.cap = 3;
  cert.bound = 130;
  const CertificateReport r = check_certificate(ctx, sc.X, sc.gamma, cert);
  bool identity = true;
  std::size_t explicit_n = 0;
  for (const auto& c : check_decomposition_identity(sc, 3)) {
    identity = identity && c.holds;
    explicit_n += c.explicit_checked ? 1 : 0;
  }
  return {r.verdict == Verdict::Pass && identity,
          "certificate " + to_string(r.verdict) + ", identity n<=3 " + (identity ? "holds" : "fails") + " (" +
              std::to_string(explicit_n) + " explicit, rest span + inert places)"};
}

Outcome recurrence_engine() {
  const ExampleScenario sc = example2_scenario();
  const IntPoly h = IntPoly::from_ints({5, -2, 1});
  const bool verified = verify_recurrence(sc.curve, sc.Q.elliptic()[0], h, 25, sc.tower);
  const bool hand = recurrence_coeffs(h, 2) == IntVector{-5, 2} && recurrence_coeffs(h, 3) == IntVector{-10, -1};
  return {verified && hand, std::string("n<=25 ") + (verified ? "verified" : "failed") + ", a_2=(-5,2) a_3=(-10,-1) " +
                                (hand ? "match" : "differ")};
}

Outcome torus_oracle() {
  const TowerPtr L = make_tower(parse_poly(5, "t^3+1"));
  std::mt19937_64 rng(testing::kSeed);
  std::size_t disagreements = 0, members = 0;
  for (int i = 0; i < 30; ++i) {
    const auto inst = testing::random_torus_instance(rng, L);
    const auto found = torus_membership(inst.target, inst.gamma);
    const bool enumerated = testing::enumerated_member(L, inst, 3);
    if (found.has_value() != enumerated) ++disagreements;
    if (found && testing::naive_evaluate(L, inst, *found) != inst.target) ++disagreements;
    members += enumerated ? 1 : 0;
  }
  return {disagreements == 0, "30 instances (" + std::to_string(members) + " members), " +
                                  std::to_string(disagreements) + " disagreements"};
}

Outcome normalize_sets() {
  const ExampleScenario sc = example2_scenario();
  std::mt19937_64 rng(testing::kSeed);
  std::size_t mismatches = 0, points = 0;
  for (int i = 0; i < 20; ++i) {
    const auto cmp = testing::compare_normalized(sc, testing::random_fset(rng, sc), 24);
    if (cmp.input != cmp.output) ++mismatches;
    points += cmp.input.size();
  }
  return {mismatches == 0,
          "20 sets, exponents <= 24 (n <= 8 at stride 3), " + std::to_string(points) + " points compared, " + std::to_string(mismatches) + " mismatches"};
}

Outcome stabilizers() {
  const std::size_t line = torus_stabilizer(LaurentPoly::parse(5, 2, "x2 - x1 - 1")).dimension;
  const std::size_t hyperbola = torus_stabilizer(LaurentPoly::parse(5, 2, "x1*x2 - 1")).dimension;
  const std::size_t product = product_stabilizer(example1_scenario().X).dimension;
  return {line == 0 && hyperbola == 1 && product == 1,
          "x2-x1-1: " + std::to_string(line) + ", x1*x2-1: " + std::to_string(hyperbola) +
              ", C x E: " + std::to_string(product)};
}

Outcome property_suites() {
  Outcome o;
  std::size_t samples = 0, failures = 0;
  std::string first;
  for (const auto& s : run_property_suites(kDefaultSeed)) {
    samples += s.samples;
    failures += s.failures;
    if (!s.passed() && first.empty()) first = s.name + ": " + s.first_failure;
  }
  o.pass = failures == 0;
  o.detail = std::to_string(samples) + " checks, " + std::to_string(failures) + " failures" +
             (first.empty() ? "" : " (" + first + ")");
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Frobenius relations", 1.0, frobenius_relations},
      {2, "supersingular example", 60.0, [] { return reproduce_intersection(example1_scenario()); }},
      {3, "two-set decomposition certificate", 60.0, decomposition_certificate},
      {4, "ordinary example", 60.0, [] { return reproduce_intersection(example2_scenario()); }},
      {5, "recurrence engine", 10.0, recurrence_engine},
      {6, "torus membership oracle", 0.0, torus_oracle},
      {7, "common stride normalization", 0.0, normalize_sets},
      {8, "stabilizer dimensions", 0.0, stabilizers},
      {9, "property suites", 0.0, property_suites},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit";
    }
    failed += o.pass ? 0 : 1;
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << secs;
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << " - " << o.detail
              << " [" << t.str() << " s]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
