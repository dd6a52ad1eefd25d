#pragma once

// X(K) ∩ Gamma at bounded height, certificate checking, the linear
// recurrence behind F^n = sum a_n^(i) F^i, and the worked examples.

#include <optional>
#include <string>
#include <vector>

#include "fsetkit/fsetalgebra.hpp"
#include "fsetkit/variety.hpp"

namespace fsetkit {

struct Witness {
  CoeffVector coeffs;
  SpanPoint point;  // evaluate(Gamma, coeffs); ctx.materialize gives coordinates
};

struct IntersectionResult {
  std::int64_t bound = 0;
  std::vector<Witness> witnesses;  // lexicographic in coeffs
};

// Enumerates |c|_inf <= B, negative entries included; torus equations are
// tested before any elliptic block is expanded. Threads split the box into
// blocks that are merged in order.
IntersectionResult brute_intersect(SpanContext& ctx, const Subvariety& X, const Subgroup& gamma, std::int64_t B,
                                   unsigned threads = 1, std::uint64_t budget = kDefaultEnumerationBudget);

// ---- certificates

struct Certificate {
  FSetUnion claimed;
  std::uint64_t cap = 3;     // N
  std::int64_t bound = 130;  // B
};

enum class Verdict { Pass, Fail, PassBounded };

// "PASS", "FAIL", "PASS-BOUNDED".
std::string to_string(Verdict v);
// 0, 2, 3.
int exit_code(Verdict v);

struct SoundnessFailure {
  std::string set;     // "groupless[0]", "generalized[1]", "pseudo[0]"
  std::string member;  // exponent tuple or coefficient vector
  std::string reason;
};

struct CompletenessFailure {
  CoeffVector witness;
  // Every claimed set rejected the witness with proof.
  bool certified_absent = false;
};

struct CertificateReport {
  Verdict verdict = Verdict::Pass;
  std::int64_t bound = 0;
  std::uint64_t cap = 0;
  std::vector<CoeffVector> witnesses;
  std::vector<SoundnessFailure> soundness_failures;
  std::vector<CompletenessFailure> completeness_failures;
};

// Soundness: every enumerated member of every claimed set (exponents <= N,
// coefficients <= B) lies in X and in Gamma. Completeness: every witness of
// brute_intersect(X, Gamma, B) lies in some claimed set. FAIL on a soundness
// failure or a certified-absent witness, PASS-BOUNDED when the only failures
// are witnesses whose absence is not proven.
CertificateReport check_certificate(SpanContext& ctx, const Subvariety& X, const Subgroup& gamma,
                                    const Certificate& cert, unsigned threads = 1);
CertificateReport check_certificate(SpanContext& ctx, const Subvariety& X, const Subgroup& gamma,
                                    const Certificate& cert, const IntersectionResult& witnesses,
                                    unsigned threads = 1);

// One singleton {evaluate(Gamma, c)} per witness.
Certificate tautological_certificate(const SpanContext& ctx, const IntersectionResult& result,
                                     const FrobeniusOp& op, std::uint64_t cap);

// ---- recurrence

// x^n mod h, lowest coefficient first.
IntVector recurrence_coeffs(const IntPoly& h, std::uint64_t n);

struct RecurrenceState {
  IntPoly h;
  std::vector<IntVector> vectors;  // a_0 .. a_N
};

RecurrenceState recurrence_state(const IntPoly& h, std::uint64_t N);

struct RecurrenceCheck {
  bool ok = true;
  std::optional<std::uint64_t> first_failure;
  // n <= exact_through were compared on the point itself, larger n after
  // reduction at `places` inert places.
  std::uint64_t exact_through = 0;
  std::size_t places = 0;
};

// Compares F^n(P) with sum a_n^(i) F^i(P) for n <= N. Points too large to
// write down are compared at inert places of L.
RecurrenceCheck check_recurrence(const ECPoint& P, const IntPoly& h, std::uint64_t N, const TowerPtr& tower,
                                 const FrobeniusOp& op);
bool verify_recurrence(const CurveParams& curve, const ECPoint& P, const IntPoly& h, std::uint64_t N,
                       const TowerPtr& tower);

// a_0 .. a_N: the coefficient vectors of the points sum a_n^(i-1) R_i.
std::vector<IntVector> example3_intersection(const IntPoly& h, std::uint64_t N);

// ---- worked examples

struct ExampleScenario {
  std::string name;
  TowerPtr tower;
  GroupPtr group;
  FrobeniusOp op;
  CurveParams curve;
  ProductPoint Q, Q1, Q2;
  Subvariety X;
  Subgroup gamma;
  // Two coupled sets {F^2n(Q1) + F^4n(Q2)}, {F^2n+1(Q1) - F^4n+2(Q2)};
  // empty for the ordinary curve.
  Certificate decomposition;
  // Preimages of {F^2n(t)} and {F^2n(t^5)} under projection to x1.
  Certificate generalized;
};

// y^2 = x^3 + 1 (supersingular) or y^2 = x^3 + x (ordinary) over F_5,
// L = F_5(t)[s]/(s^2 - d) with d the curve's right-hand side at x = t,
// Q = (t, t+1, (t, s)), X: x2 = x1 + 1 times E.
ExampleScenario example1_scenario();
ExampleScenario example2_scenario();

struct IdentityCheck {
  std::uint64_t n = 0;
  bool holds = false;
  // Also compared on explicit coordinates (only while they stay small).
  bool explicit_checked = false;
  std::size_t places = 0;
};

// F^2n(Q1) + F^4n(Q2) = 25^n Q for n <= N: compared in span coordinates,
// on explicit points where feasible, and after reduction at inert places.
std::vector<IdentityCheck> check_decomposition_identity(const ExampleScenario& sc, std::uint64_t N);

}  // namespace fsetkit
