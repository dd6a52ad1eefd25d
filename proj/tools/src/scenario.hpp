#pragma once

// Scenario files: schema "fsetkit.scenario/1".
//
//   p, q, tower            prime, Frobenius field size, d(t) of L = F_p(t)[s]/(s^2-d)
//   group                  {"torus_dim": N, "curves": [{"a4": .., "a6": ..}, ...]}
//   points                 name -> {"torus": [expr, ...], "elliptic": [[x, y] | "O", ...]}
//   gamma                  generator names
//   variety                {"full": true} or {"torus": [eq, ...], "elliptic": [null | {...}, ...]}
//   bounds                 {"B": .., "N": ..}
//   certificate            {"groupless": [...], "generalized": [...], "pseudo": [...]}
//   recurrence             {"point": name, "factor": i, "h": [c0, ..., 1], "N": n}
//
// Malformed JSON or fields of the wrong shape raise ParseError; references
// that do not resolve and points that fail validation raise ValidationError.

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "fsetkit/intersector.hpp"
#include "json.hpp"

namespace fsetkit::cli {

inline constexpr const char* kScenarioSchema = "fsetkit.scenario/1";

struct RecurrenceSpec {
  std::string point;
  std::size_t factor = 0;
  ECPoint P;
  IntPoly h;
  std::uint64_t N = 25;
};

struct Scenario {
  std::string name;
  std::uint32_t p = 0;
  BigInt q;
  TowerPtr tower;
  GroupPtr group;
  std::map<std::string, ProductPoint> points;
  std::optional<Subgroup> gamma;
  std::optional<Subvariety> variety;
  std::optional<Certificate> certificate;
  std::int64_t bound = 130;
  std::uint64_t cap = 3;
  std::optional<RecurrenceSpec> recurrence;

  FrobeniusOp frobenius() const { return FrobeniusOp(p, q); }
  // Every curve of the group and of certificate targets.
  std::vector<CurveParams> curves() const;
};

Scenario load_scenario(const nlohmann::json& doc);
Scenario load_scenario_text(const std::string& text);
Scenario load_scenario_file(const std::filesystem::path& path);

}  // namespace fsetkit::cli
