#pragma once

// Seeded invariant suites over the worked-example groups: group-law axioms,
// additivity of F and of homomorphisms, closure under the curve equation,
// and the companion recurrence.

#include <cstdint>
#include <string>
#include <vector>

namespace fsetkit {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct SuiteResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

SuiteResult suite_curve_group_law(std::uint64_t seed, std::size_t samples = 200);
SuiteResult suite_frobenius_additivity(std::uint64_t seed, std::size_t samples = 200);
SuiteResult suite_product_group_law(std::uint64_t seed, std::size_t samples = 200);
SuiteResult suite_hom_additivity(std::uint64_t seed, std::size_t samples = 200);
SuiteResult suite_recurrence_shift(std::uint64_t seed, std::size_t samples = 100);

std::vector<SuiteResult> run_property_suites(std::uint64_t seed);

}  // namespace fsetkit
