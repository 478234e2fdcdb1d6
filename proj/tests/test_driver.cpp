#include "pnil/catalog.hpp"
#include "pnil/driver.hpp"
#include "pnil/sylowizer.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace pnil;
using namespace pnil::cli;
using nlohmann::json;

namespace {

std::string temp_catalog(const std::vector<GroupSpec>& specs, const std::string& stem) {
  auto path = std::filesystem::temp_directory_path() / (stem + ".cat");
  save_specs(specs, path);
  return path.string();
}

}  // namespace

TEST_CASE("verify on A4 for one criterion") {
  RunConfig c;
  c.groups = {"A4"};
  c.theorems = {TheoremId::T31};
  const auto r = cmd_verify(c);
  CHECK(r.exit_code == 0);
  const auto doc = json::parse(r.report);
  CHECK(doc["command"] == "verify");
  REQUIRE(doc["records"].size() == 2);
  for (const auto& rec : doc["records"]) {
    CHECK(rec["equivalent"] == true);
    CHECK(rec["params"]["theorem"] == "T31");
    CHECK(rec["millis"] == 0);
  }
  CHECK(r.summary.rfind("2 checks, 0 inequivalences", 0) == 0);
}

TEST_CASE("an empty catalog gives an empty report") {
  RunConfig c;
  c.catalog_path = temp_catalog({}, "pnil_empty");
  const auto r = cmd_verify(c);
  CHECK(r.exit_code == 0);
  CHECK(r.summary.rfind("0 checks", 0) == 0);
  CHECK(json::parse(r.report)["records"].empty());
}

TEST_CASE("usage errors") {
  RunConfig c;
  c.groups = {"NoSuchGroup"};
  CHECK_THROWS_AS(cmd_verify(c), UsageError);
  c.groups = {"A4"};
  c.catalog_path = "/nonexistent/pnil.cat";
  CHECK_THROWS_AS(cmd_verify(c), UsageError);
  CHECK_THROWS_AS(cmd_replay(RunConfig{}, "{\"command\":\"x\"}"), UsageError);
  CHECK(!parse_format("xml"));
}

TEST_CASE("builtin names and quotients resolve") {
  RunConfig c;
  GroupResolver res(c);
  CHECK(res.lattice("dihedral:8")->group().order() == 8);
  const auto s4 = res.lattice("S4");
  for (std::size_t k = 0; k < s4->size(); ++k)
    if (s4->is_normal(k) && (*s4)[k].order() == 4)
      CHECK(res.lattice("S4/" + std::to_string(k))->group().order() == 6);
  CHECK_THROWS_AS(res.lattice("S4/1"), UsageError);
}

TEST_CASE("reports do not depend on the number of jobs") {
  RunConfig c;
  c.groups = {"S3", "A4", "S4", "SL23", "F21", "Q8xS3"};
  c.jobs = 1;
  const auto one = cmd_verify(c);
  c.jobs = 4;
  const auto four = cmd_verify(c);
  CHECK(one.report == four.report);
  c.jobs = 1;
  const auto l1 = cmd_lemmas(c);
  c.jobs = 4;
  CHECK(cmd_lemmas(c).report == l1.report);
}

TEST_CASE("csv and table output") {
  RunConfig c;
  c.groups = {"S3"};
  c.theorems = {TheoremId::T36};
  c.format = Format::csv;
  const auto csv = cmd_verify(c).report;
  CHECK(csv.rfind("group,theorem,p,d,mode,complete_set_id,hypothesis,conclusion,equivalent,witness,millis,normal_n\n", 0) == 0);
  c.format = Format::table;
  CHECK(cmd_verify(c).report.find("equiv") != std::string::npos);
}

TEST_CASE("analyze output") {
  const auto r = cmd_analyze(RunConfig{}, "A4", 2);
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("verdict: not 2-nilpotent") != std::string::npos);
  CHECK(r.report.find("not S-permutable") != std::string::npos);
  CHECK(cmd_analyze(RunConfig{}, "C6", 2).report.find("verdict: 2-nilpotent") != std::string::npos);
}

TEST_CASE("replay of a faulty run") {
  RunConfig c;
  c.groups = {"S3", "A4"};
  testing::inject_permutability_fault(testing::PermutabilityFault::never_permutes);
  const auto bad = cmd_verify(c);
  const auto again = cmd_replay(c, bad.report, true);
  testing::inject_permutability_fault(testing::PermutabilityFault::none);
  CHECK(bad.exit_code == 1);
  CHECK(again.exit_code == 1);
  const auto clean = cmd_replay(c, bad.report, true);
  CHECK(clean.exit_code == 0);
  CHECK(clean.summary.find(" 0 still failing") != std::string::npos);
}

TEST_CASE("lemmas with quotients") {
  RunConfig c;
  c.groups = {"S4"};
  c.quotients = true;
  const auto r = cmd_lemmas(c);
  CHECK(r.exit_code == 0);
  const auto doc = json::parse(r.report);
  bool saw_quotient = false;
  for (const auto& rec : doc["records"]) {
    saw_quotient |= rec["group"].get<std::string>().find('/') != std::string::npos;
    CHECK(rec["passed"] == true);
  }
  CHECK(saw_quotient);
}
