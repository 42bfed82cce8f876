#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "gloc/cli.hpp"

using namespace gloc;

namespace {
std::pair<int, std::string> run_cfg(RunConfig cfg) {
  std::ostringstream out, err;
  int rc = run(cfg, out, err);
  return {rc, out.str() + err.str()};
}
}  // namespace

TEST_CASE("system spec grammar") {
  auto z12 = build_ring("Z/12");
  CHECK(parse_system_spec(z12, "all").size() == 6);
  CHECK(parse_system_spec(z12, "unit").size() == 1);
  CHECK(parse_system_spec(z12, "meets:{4}").size() == 3);
  CHECK(parse_system_spec(z12, "comax:{3}").size() == 3);
  CHECK(parse_system_spec(z12, "vsub:{1}").size() == 1);
  CHECK(parse_system_spec(z12, "primes-avoid:{{2}}").size() == 2);
  CHECK(parse_system_spec(z12, "explicit:{{1}}").size() == 1);
  CHECK(parse_system_spec(z12, "map:Z/4:0,1,2,3,0,1,2,3,0,1,2,3").size() ==
        2);
  CHECK_THROWS_AS(parse_system_spec(z12, "bogus"), ParseError);
  CHECK_THROWS_AS(parse_system_spec(z12, "meets:4"), ParseError);
}

TEST_CASE("module spec grammar") {
  auto z12 = build_ring("Z/12");
  CHECK(parse_module_spec(z12, "R")->size() == 12);
  CHECK(parse_module_spec(z12, "R/{4}")->size() == 4);
  CHECK_THROWS_AS(parse_module_spec(z12, "M"), ParseError);
}

TEST_CASE("analyze-ring") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::AnalyzeRing;
  cfg.ring_spec = "Z/12";
  auto [rc, text] = run_cfg(cfg);
  CHECK(rc == 0);
  CHECK(text.find("{0,3,6,9}") != std::string::npos);
  CHECK(text.find("prime") != std::string::npos);

  cfg.json = true;
  auto [rc2, json_text] = run_cfg(cfg);
  CHECK(rc2 == 0);
  auto doc = nlohmann::json::parse(json_text);
  CHECK(doc.at("order").get<int>() == 12);
  CHECK(doc.at("ideals").size() == 6);

  cfg.ring_spec = "Z/1";
  auto [rc3, zero_text] = run_cfg(cfg);
  CHECK(rc3 == 0);
  CHECK(nlohmann::json::parse(zero_text).at("order").get<int>() == 1);
}

TEST_CASE("systems command") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::Systems;
  cfg.ring_spec = "Z/12";
  auto [rc, text] = run_cfg(cfg);
  CHECK(rc == 0);
  CHECK(text.find("(4)") != std::string::npos);  // four systems
}

TEST_CASE("localize command reproduces the worked example") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::Localize;
  cfg.ring_spec = "Z/12";
  cfg.system_spec = "meets:{4}";
  auto [rc, text] = run_cfg(cfg);
  CHECK(rc == 0);
  CHECK(text.find("order 3") != std::string::npos);
  CHECK(text.find("{0,3,6,9}") != std::string::npos);

  cfg.module_spec = "R/{2}";
  auto [rc2, text2] = run_cfg(cfg);
  CHECK(rc2 == 0);
  CHECK(text2.find("localized module order 1") != std::string::npos);
}

TEST_CASE("error exit codes") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::AnalyzeRing;
  cfg.ring_spec = "Z/banana";
  CHECK(run_cfg(cfg).first == 2);

  cfg.ring_spec = "Z/12";
  cfg.command = RunConfig::Command::Localize;
  cfg.system_spec = "explicit:{{2}}";  // not topologizing
  CHECK(run_cfg(cfg).first == 2);

  RunConfig tiny;
  tiny.command = RunConfig::Command::Verify;
  tiny.ring_spec = "Z/12";
  tiny.budget.tuple_limit = 4;  // everything blows the budget
  auto [rc, text] = run_cfg(tiny);
  // Budget failures inside the harness become failing reports.
  CHECK(rc == 1);
  (void)text;
}

TEST_CASE("verify on one ring passes and is deterministic") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::Verify;
  cfg.ring_spec = "Z/4";
  cfg.json = true;
  cfg.seed = 11;
  auto [rc1, a] = run_cfg(cfg);
  auto [rc2, b] = run_cfg(cfg);
  CHECK(rc1 == 0);
  CHECK(rc2 == 0);
  CHECK(a == b);  // byte-identical with the same seed

  // Every line is a valid report with the JSON-lines schema.
  std::istringstream lines(a);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    auto doc = nlohmann::json::parse(line);
    CHECK(doc.contains("theorem"));
    CHECK(doc.contains("instance"));
    CHECK(doc.contains("verdict"));
    CHECK(doc.contains("witness"));
    CHECK(doc.at("ms").get<int>() == 0);  // timings off by default
    // Re-serializing a parsed report is byte-identical.
    CHECK(report_json(report_from_json(doc), false).dump() == line);
    ++count;
  }
  CHECK(count > 20);
}

TEST_CASE("classify-epis") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::ClassifyEpis;
  cfg.ring_spec = "Z/12";
  cfg.json = true;
  auto [rc, text] = run_cfg(cfg);
  CHECK(rc == 0);
  // All six quotients classified; the flat epis get reconstruction
  // reports on top.
  int classifications = 0, reconstructions = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    auto doc = nlohmann::json::parse(line);
    if (doc.at("theorem") == "quotient-classification") ++classifications;
    if (doc.at("theorem") == "flat-epi-iff-localization") ++reconstructions;
  }
  CHECK(classifications == 6);
  CHECK(reconstructions == 4);  // (1), (3), (4), (0): the flat quotients
}
