#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "syzlab/harness.hpp"

using namespace syzlab;
using json = nlohmann::ordered_json;

namespace {

RunConfig make(const std::string& command) {
  RunConfig c;
  c.command = command;
  c.threads = 1;
  return c;
}

bool check_passed(const json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["name"] == name) return c["passed"].get<bool>();
  FAIL("missing check " << name);
  return false;
}

}  // namespace

TEST_CASE("usage errors exit 3") {
  RunConfig c = make("verify-class");
  c.kmax = 2;
  const CommandOutcome out = run(c);
  CHECK(out.exit_code == kExitUsage);
  CHECK(out.report["error"]["kind"] == "usage");
  CHECK(out.report["passed"] == false);

  CHECK(run(make("nonsense")).exit_code == kExitUsage);
  RunConfig g = make("gonal");
  g.k = 3;
  g.prime = 997;  // below 1000
  CHECK(run(g).exit_code == kExitUsage);
  g.prime = 32000;  // not prime
  CHECK(run(g).exit_code == kExitUsage);
  RunConfig ci = make("ci");
  ci.genus = 6;
  CHECK(run(ci).exit_code == kExitUsage);
  RunConfig d = make("dvr-demo");
  d.size = 0;
  CHECK(run(d).exit_code == kExitUsage);
}

TEST_CASE("verify-class report") {
  RunConfig c = make("verify-class");
  c.kmax = 10;
  const CommandOutcome out = run(c);
  CHECK(out.exit_code == kExitPass);
  REQUIRE(out.report["entries"].size() == 8);
  for (const auto& e : out.report["entries"]) CHECK(e["ratio"] == std::to_string(e["k"].get<int>() - 1));
  CHECK(out.report["schema"] == kReportSchemaVersion);
}

TEST_CASE("strand commands") {
  RunConfig s = make("scroll");
  s.k = 4;
  CommandOutcome out = run(s);
  CHECK(out.exit_code == kExitPass);
  CHECK(out.report["strand"]["dims"] == json({6, 8, 3, 0, 0}));
  CHECK(out.report["extra_syzygies"]["value"] == 3);

  RunConfig g = make("gonal");
  g.k = 4;
  g.prime = 31991;
  g.seed = 7;
  out = run(g);
  CHECK(out.exit_code == kExitPass);
  CHECK(out.report["extra_syzygies"]["value"] == 3);
  CHECK(check_passed(out.report, "routes_agree"));
  CHECK(check_passed(out.report, "gonal_nullity_bound"));
  CHECK(check_passed(out.report, "dominates_scroll"));
  CHECK(out.report["model"].contains("equation"));

  RunConfig ci = make("ci");
  ci.genus = 5;
  ci.prime = 31991;
  ci.seed = 1;
  out = run(ci);
  CHECK(out.exit_code == kExitPass);
  CHECK(out.report["extra_syzygies"]["j"] == 3);
  CHECK(out.report["extra_syzygies"]["value"] == 0);
}

TEST_CASE("a forced expectation fails with exit 1") {
  RunConfig s = make("scroll");
  s.k = 3;
  s.expected_extra = 5;
  const CommandOutcome out = run(s);
  CHECK(out.exit_code == kExitCheckFailed);
  CHECK(out.report["passed"] == false);
}

TEST_CASE("dvr demo") {
  RunConfig d = make("dvr-demo");
  d.size = 3;
  d.seed = 5;
  d.count = 20;
  CommandOutcome out = run(d);
  CHECK(out.exit_code == kExitPass);
  CHECK(out.report["instances"].size() == 20);
  d.size = 1;
  d.count = 1;
  out = run(d);
  CHECK(out.exit_code == kExitPass);
  const auto& inst = out.report["instances"][0];
  CHECK(inst["detval"] == inst["exponents"][0]);
  CHECK(inst["corank0"] == (inst["exponents"][0].get<unsigned>() > 0 ? 1 : 0));
}

TEST_CASE("identical configs give identical reports") {
  RunConfig g = make("maxcliff");
  g.k = 3;
  g.prime = 10007;
  g.seed = 3;
  const json a = strip_timing(run(g).report), b = strip_timing(run(g).report);
  CHECK(a.dump() == b.dump());
  g.threads = 3;
  CHECK(strip_timing(run(g).report).dump() == a.dump());
  const json stripped = strip_timing(json{{"total_ms", 1}, {"x", {{"elapsed_ms", 2}, {"y", 3}}}});
  CHECK(stripped == json{{"x", {{"y", 3}}}});
}

TEST_CASE("run config JSON") {
  const json doc = {{"command", "gonal"}, {"k", 4},          {"prime", 10007},     {"seed", 9},
                    {"route", "points"},  {"shape", "k4"},   {"expected_extra", 3}};
  const RunConfig c = run_config_from_json(doc);
  CHECK(c.k == 4);
  CHECK(c.route == Route::Points);
  CHECK(c.shape == GonalShape::K4);
  CHECK(c.expected_extra == std::optional<std::size_t>(3));
  CHECK(run_config_from_json(to_json(c)).seed == 9);
  CHECK(to_json(run_config_from_json(to_json(c))) == to_json(c));

  CHECK_THROWS_AS(run_config_from_json(json{{"command", "scroll"}, {"kk", 3}}), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(json{{"k", 3}}), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(json{{"command", "scroll"}, {"k", "three"}}), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(json{{"command", "gonal"}, {"route", "sideways"}}), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(json::array()), ConfigError);
}

TEST_CASE("suite aggregation") {
  CommandOutcome out = cmd_suite(json::array(), 2);
  CHECK(out.exit_code == kExitPass);
  CHECK(out.report["entries"].empty());

  const json entries = json::array({json{{"command", "scroll"}, {"k", 3}},
                                    json{{"command", "scroll"}, {"k", 3}, {"expected_extra", 7}},
                                    json{{"command", "verify-class"}, {"kmax", 5}}});
  out = cmd_suite(entries, 2);
  CHECK(out.exit_code == kExitCheckFailed);
  REQUIRE(out.report["entries"].size() == 3);
  CHECK(out.report["entries"][0]["passed"] == true);
  CHECK(out.report["entries"][1]["exit_code"] == kExitCheckFailed);
  CHECK(out.report["entries"][2]["passed"] == true);

  CHECK_THROWS_AS(cmd_suite(json{{"command", "scroll"}}, 1), ConfigError);
  CHECK_THROWS_AS(cmd_suite(json::array({json{{"command", "scroll"}, {"k", 1}}}), 1), ConfigError);
}

TEST_CASE("suite files") {
  const auto dir = std::filesystem::temp_directory_path() / "syzlab_suite_test";
  std::filesystem::create_directories(dir);
  const auto bad = dir / "bad.json";
  std::ofstream(bad) << "[{\"command\": ";
  CHECK_THROWS_AS(cmd_suite_file(bad.string(), 1), ConfigError);
  CHECK_THROWS_AS(cmd_suite_file((dir / "missing.json").string(), 1), ConfigError);

  const auto good = dir / "good.json";
  const auto report = dir / "scroll3.json";
  std::filesystem::remove(report);
  std::ofstream(good) << json::array({json{{"command", "scroll"}, {"k", 3}, {"output", report.string()}}}).dump();
  CHECK(cmd_suite_file(good.string(), 1).exit_code == kExitPass);
  std::ifstream in(report);
  REQUIRE(in.good());
  CHECK(json::parse(in)["extra_syzygies"]["value"] == 2);
}
