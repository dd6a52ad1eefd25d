#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "app.hpp"
#include "scenario.hpp"

namespace fsetkit::cli {
namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scenario(const std::string& name) { return std::string(FSETKIT_SCENARIO_DIR) + "/" + name; }

nlohmann::json minimal_doc() {
  return nlohmann::json::parse(R"({
    "schema": "fsetkit.scenario/1", "name": "m", "p": 5, "tower": "t^3+1",
    "group": {"torus_dim": 1, "curves": []},
    "points": {"A": {"torus": ["t"]}},
    "gamma": ["A"],
    "variety": {"full": true}
  })");
}

TEST(ScenarioLoader, Minimal) {
  const Scenario s = load_scenario(minimal_doc());
  EXPECT_EQ(s.p, 5u);
  EXPECT_EQ(s.q, 5);
  ASSERT_TRUE(s.gamma.has_value());
  EXPECT_EQ(s.gamma->rank(), 1u);
}

TEST(ScenarioLoader, ShapeErrorsAreParseErrors) {
  EXPECT_THROW(load_scenario_text("{"), ParseError);
  auto doc = minimal_doc();
  doc["p"] = "five";
  EXPECT_THROW(load_scenario(doc), ParseError);
  doc = minimal_doc();
  doc["schema"] = "other/2";
  EXPECT_THROW(load_scenario(doc), Error);
}

TEST(ScenarioLoader, SemanticErrorsAreValidationErrors) {
  auto doc = minimal_doc();
  doc["gamma"] = {"B"};
  EXPECT_THROW(load_scenario(doc), ValidationError);
  doc = minimal_doc();
  doc["points"]["A"]["torus"] = {"0"};
  EXPECT_THROW(load_scenario(doc), ValidationError);
  doc = minimal_doc();
  doc["p"] = 4;
  EXPECT_THROW(load_scenario(doc), ValidationError);
}

TEST(Cli, CharpolyOfBothExamples) {
  const CliRun a = run_cli({"charpoly", scenario("example1.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(nlohmann::json::parse(a.out)["curves"][0]["charpoly"], "[5, 0, 1]");
  const CliRun b = run_cli({"charpoly", scenario("example2.json")});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(nlohmann::json::parse(b.out)["curves"][0]["charpoly"], "[5, -2, 1]");
}

TEST(Cli, CertifyVerdictsDriveExitCode) {
  EXPECT_EQ(run_cli({"certify", scenario("example1.json")}).code, 0);
  EXPECT_EQ(run_cli({"certify", scenario("example2.json")}).code, 0);
  const CliRun bad = run_cli({"certify", scenario("empty_certificate.json")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(nlohmann::json::parse(bad.out)["verdict"], "FAIL");
}

TEST(Cli, IntersectFullGroup) {
  const CliRun r = run_cli({"--bound", "2", "intersect", scenario("full_group.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["count"], 25);
}

TEST(Cli, ErrorExitCodes) {
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"nonsense"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"--format", "xml", "example3"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"charpoly", scenario("missing.json")}).code, kExitUsage);
  EXPECT_EQ(run_cli({"--bound", "100000", "intersect", scenario("full_group.json")}).code, kExitResource);
}

TEST(Cli, ValidationExitCode) {
  const std::string path = ::testing::TempDir() + "/fsetkit_invalid.json";
  {
    auto doc = minimal_doc();
    doc["gamma"] = {"B"};
    std::ofstream(path) << doc.dump();
  }
  const CliRun r = run_cli({"intersect", path});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("$.gamma"), std::string::npos) << r.err;
}

TEST(Cli, OutputIsDeterministic) {
  for (std::vector<std::string> args : {std::vector<std::string>{"example1"},
                                        {"--format", "text", "example2"},
                                        {"certify", scenario("example2.json")},
                                        {"--threads", "1", "intersect", scenario("example1.json")}}) {
    const CliRun a = run_cli(args), b = run_cli(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
  const CliRun one = run_cli({"--threads", "1", "intersect", scenario("example1.json")});
  const CliRun four = run_cli({"--threads", "4", "intersect", scenario("example1.json")});
  EXPECT_EQ(one.out, four.out);
}

TEST(Cli, RecurrenceReport) {
  const CliRun r = run_cli({"recurrence", scenario("example2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["vectors"][2], nlohmann::json({-5, 2}));
  EXPECT_EQ(j["vectors"][3], nlohmann::json({-10, -1}));
  EXPECT_TRUE(j["check"]["verified"].get<bool>());
}

}  // namespace
}  // namespace fsetkit::cli
