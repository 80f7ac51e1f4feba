#include "doctest.h"

#include "aalloc/io.hpp"
#include "aalloc/milp.hpp"
#include "aalloc/oracle.hpp"
#include "aalloc/solver.hpp"
#include "helpers.hpp"

using namespace aalloc;
using namespace aalloc::testing;

TEST_CASE("single task maps to the cheaper capable ECU") {
  ProblemInstance inst = tiny_instance();  // B task, costs 5*h vs 7*h
  OracleResult res = brute_force_optimum(inst, Priority::CostFirst);
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(res.primary == 10.0);
  REQUIRE(res.best.has_value());
  CHECK(res.best->placements.size() == 1);
  CHECK(res.best->placements[0].ecu_id == "E1");
}

TEST_CASE("two-task chain equals the solver for both priorities") {
  ProblemInstance inst = tiny_instance();
  inst.tasks.push_back(make_task("T2", Asil::b(), "APP1", 64, {4, 6}, {3, 2}));
  inst.edges = {make_edge("T1", "T2", 4)};
  for (Priority pr : {Priority::CostFirst, Priority::LatencyFirst}) {
    OracleResult oracle = brute_force_optimum(inst, pr);
    MilpModel m = build_model(inst, "APP1", pr);
    SolveReport rep = solve(m);
    REQUIRE(oracle.status == SolveStatus::Optimal);
    REQUIRE(rep.status == SolveStatus::Optimal);
    CHECK(oracle.primary == doctest::Approx(rep.stage_objectives[0]));
    CHECK(oracle.secondary == doctest::Approx(rep.stage_objectives[1]));
  }
}

TEST_CASE("oracle solutions satisfy the independent validator") {
  ProblemInstance inst = tiny_instance();
  inst.tasks[0].asil = Asil::d();  // decomposition across both B ECUs
  inst.tasks.push_back(make_task("T2", Asil::b(), "APP1", 64, {4, 6}, {3, 2}));
  inst.edges = {make_edge("T1", "T2", 4)};
  OracleResult res = brute_force_optimum(inst, Priority::CostFirst);
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(validate_solution(inst, *res.best).empty());
}

TEST_CASE("case-study sub-instance with T5 and T6 matches the solver") {
  ProblemInstance full = load_instance(CASE_STUDY_JSON);
  ProblemInstance sub;
  sub.applications = full.applications;
  sub.ecus = full.ecus;
  sub.lifetime_hours = full.lifetime_hours;
  for (const auto& t : full.tasks)
    if (t.id == "T5" || t.id == "T6") sub.tasks.push_back(t);
  for (const auto& e : full.edges)
    if ((e.from_task == "T5" || e.from_task == "T6") && (e.to_task == "T5" || e.to_task == "T6"))
      sub.edges.push_back(e);
  for (Priority pr : {Priority::CostFirst, Priority::LatencyFirst}) {
    OracleResult oracle = brute_force_optimum(sub, pr, "APP1", 1e8);
    MilpModel m = build_model(sub, "APP1", pr);
    SolveReport rep = solve(m);
    REQUIRE(oracle.status == SolveStatus::Optimal);
    REQUIRE(rep.status == SolveStatus::Optimal);
    CHECK(oracle.primary == doctest::Approx(rep.stage_objectives[0]));
    CHECK(oracle.secondary == doctest::Approx(rep.stage_objectives[1]));
  }
}

TEST_CASE("oracle refuses oversized search spaces with an estimate") {
  ProblemInstance inst = load_instance(CASE_STUDY_JSON);
  try {
    brute_force_optimum(inst, Priority::CostFirst, "APP1", 10.0);
    FAIL("expected OracleTooLarge");
  } catch (const OracleTooLarge& e) {
    CHECK(e.estimate > 10.0);
  }
}

TEST_CASE("infeasible instance reports Infeasible") {
  ProblemInstance inst = tiny_instance();
  inst.tasks[0].memory_mb = {4096, 4096, 4096, 4096};
  OracleResult res = brute_force_optimum(inst, Priority::CostFirst);
  CHECK(res.status == SolveStatus::Infeasible);
  CHECK(!res.best.has_value());
}
