#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "aalloc/instance_gen.hpp"
#include "aalloc/io.hpp"
#include "helpers.hpp"

#include <nlohmann/json.hpp>

using namespace aalloc;
using namespace aalloc::testing;
using nlohmann::json;

namespace {

json minimal_json() {
  return json::parse(R"({
    "applications": ["APP1"],
    "ecus": [
      {"id": "E1", "asil": "B", "memory": "1 GB", "failure_rate_per_hour": 1e-6},
      {"id": "E2", "asil": "b", "memory": 512, "failure_rate_per_hour": 2e-6}
    ],
    "tasks": [{
      "id": "T1", "asil": "B", "application": "APP1",
      "memory": {"A": "64 MB", "B": 64, "C": 64, "D": "1 GB"},
      "wcet_ms": {"E1": {"A": 1, "B": 2, "C": 3, "D": 4},
                  "E2": {"A": 2, "B": 3, "C": 4, "D": 5}},
      "dev_cost": {"E1": {"A": 1, "B": 2, "C": 3, "D": 9},
                   "E2": {"A": 2, "B": 3, "C": 4, "D": 10}}
    }],
    "edges": []
  })");
}

}  // namespace

TEST_CASE("parse a minimal instance with unit suffixes") {
  ProblemInstance inst = parse_instance(minimal_json());
  REQUIRE(inst.ecus.size() == 2);
  CHECK(inst.ecus[0].memory_mb == 1024);  // "1 GB" = 1024 MB
  CHECK(inst.ecus[1].memory_mb == 512);
  CHECK(inst.ecus[1].asil == Asil::b());  // case-insensitive
  REQUIRE(inst.tasks.size() == 1);
  CHECK(inst.tasks[0].memory_mb[0] == 64);
  CHECK(inst.tasks[0].memory_mb[3] == 1024);
  CHECK(inst.tasks[0].wcet_ms[1][2] == 4);
  CHECK(inst.tasks[0].localization == std::vector<char>{1, 1});
  CHECK(inst.lifetime_hours == 5000.0);  // default
  CHECK(!inst.decompose_all);
}

TEST_CASE("localization entries suppress table requirements") {
  json j = minimal_json();
  j["tasks"][0]["localization"] = {{"E2", 0}};
  j["tasks"][0]["wcet_ms"].erase("E2");
  j["tasks"][0]["dev_cost"].erase("E2");
  ProblemInstance inst = parse_instance(j);
  CHECK(inst.tasks[0].localization == std::vector<char>{1, 0});
}

TEST_CASE("parse errors carry a location hint") {
  SUBCASE("bad ASIL") {
    json j = minimal_json();
    j["ecus"][0]["asil"] = "X";
    CHECK_THROWS_AS(parse_instance(j), ParseError);
  }
  SUBCASE("bad memory unit") {
    json j = minimal_json();
    j["ecus"][0]["memory"] = "3 KB";
    CHECK_THROWS_WITH_AS(parse_instance(j), doctest::Contains("unit"), ParseError);
  }
  SUBCASE("negative memory") {
    json j = minimal_json();
    j["ecus"][0]["memory"] = -5;
    CHECK_THROWS_AS(parse_instance(j), ParseError);
  }
  SUBCASE("unknown ECU in a table") {
    json j = minimal_json();
    j["tasks"][0]["wcet_ms"]["EX"] = {{"A", 1}, {"B", 1}, {"C", 1}, {"D", 1}};
    CHECK_THROWS_WITH_AS(parse_instance(j), doctest::Contains("unknown ECU"), ParseError);
  }
  SUBCASE("missing table for a localized ECU") {
    json j = minimal_json();
    j["tasks"][0]["wcet_ms"].erase("E2");
    CHECK_THROWS_AS(parse_instance(j), ParseError);
  }
  SUBCASE("missing level in a table") {
    json j = minimal_json();
    j["tasks"][0]["dev_cost"]["E1"].erase("D");
    CHECK_THROWS_AS(parse_instance(j), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_instance("no/such/file.json"), ParseError);
  }
  SUBCASE("malformed json") {
    std::string path = "test_io_bad.json";
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS(load_instance(path), ParseError);
    std::remove(path.c_str());
  }
}

TEST_CASE("instances round-trip through serialization") {
  GenConfig cfg;
  cfg.n_tasks = 5;
  cfg.n_ecus = 3;
  cfg.seed = 12;
  cfg.scenario = GenScenario::Mixed;
  ProblemInstance inst = generate_instance(cfg);
  ProblemInstance back = parse_instance(instance_to_json(inst));
  CHECK(instance_to_json(back) == instance_to_json(inst));
  REQUIRE(back.tasks.size() == inst.tasks.size());
  for (size_t i = 0; i < inst.tasks.size(); ++i) {
    CHECK(back.tasks[i].id == inst.tasks[i].id);
    CHECK(back.tasks[i].wcet_ms == inst.tasks[i].wcet_ms);
    CHECK(back.tasks[i].dev_cost == inst.tasks[i].dev_cost);
    CHECK(back.tasks[i].memory_mb == inst.tasks[i].memory_mb);
  }
  CHECK(back.edges.size() == inst.edges.size());
}

TEST_CASE("save and load a file") {
  ProblemInstance inst = tiny_instance();
  std::string path = "test_io_roundtrip.json";
  save_instance(inst, path);
  ProblemInstance back = load_instance(path);
  CHECK(back.tasks.size() == 1);
  CHECK(back.ecus[0].memory_mb == 1024);
  std::remove(path.c_str());
}

TEST_CASE("solution serialization carries placements and schemes") {
  ProblemInstance inst = tiny_instance();
  inst.tasks[0].asil = Asil::d();
  AllocationSolution sol;
  DecompositionScheme bb;
  bb.alpha = {0, 2, 0, 0};
  sol.scheme_per_task["T1"] = bb;
  sol.placements = {{"T1", "E1", 2, 0.0}, {"T1", "E2", 2, 0.0}};
  sol.cost_total = 24;
  sol.makespan_per_app["APP1"] = 11.0;
  json j = solution_to_json(inst, sol);
  CHECK(j["cost_total"] == 24);
  CHECK(j["makespan_ms"]["APP1"] == 11.0);
  REQUIRE(j["placements"].size() == 2);
  CHECK(j["placements"][0]["asil"] == "B");
  CHECK(j["placements"][0]["wcet_ms"] == 11.0);
  CHECK(j["schemes"]["T1"]["B"] == 2);
}

TEST_CASE("schedule table lists placements grouped by ECU") {
  ProblemInstance inst = tiny_instance();
  AllocationSolution sol;
  sol.placements = {{"T1", "E1", 2, 0.0}};
  std::string table = schedule_table(inst, sol);
  CHECK(table.find("ecu") != std::string::npos);
  CHECK(table.find("E1") != std::string::npos);
  CHECK(table.find("T1") != std::string::npos);
  CHECK(table.find("11.00") != std::string::npos);  // finish = 0 + wcet(B on E1)
}
