#include "doctest.h"

#include "aalloc/ga.hpp"
#include "aalloc/instance_gen.hpp"
#include "aalloc/io.hpp"
#include "aalloc/milp.hpp"
#include "aalloc/solver.hpp"
#include "helpers.hpp"

using namespace aalloc;
using namespace aalloc::testing;

namespace {

GaParams quick_params(std::uint64_t seed) {
  GaParams p;
  p.population = 40;
  p.generations = 60;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("fitness of a feasible chromosome is its cost") {
  ProblemInstance inst = tiny_instance();
  GaChromosome c;
  DecompositionScheme trivial;
  trivial.alpha = {0, 1, 0, 0};
  c.schemes = {trivial};
  c.genes = {{{0, 2}}};  // E1 at B: helper cost 5 * 2
  CHECK(ga_fitness(inst, c, {}) == 10.0);
}

TEST_CASE("violations add exactly one penalty per task") {
  ProblemInstance inst = tiny_instance();
  GaParams p;
  p.penalty_weight = 1000.0;
  GaChromosome c;
  DecompositionScheme trivial;
  trivial.alpha = {0, 1, 0, 0};
  c.schemes = {trivial};
  SUBCASE("unplaceable gene") {
    c.genes = {{{-1, 2}}};
    CHECK(ga_fitness(inst, c, p) == 1000.0);
  }
  SUBCASE("capability violation") {
    c.genes = {{{0, 4}}};  // ASIL D replica on a B ECU
    CHECK(ga_fitness(inst, c, p) == 1000.0 + 5 * 4);
  }
  SUBCASE("duplicate ECU in a decomposed task") {
    inst.tasks[0].asil = Asil::d();
    DecompositionScheme bb;
    bb.alpha = {0, 2, 0, 0};
    c.schemes = {bb};
    c.genes = {{{0, 2}, {0, 2}}};
    CHECK(ga_fitness(inst, c, p) == 1000.0 + 2 * 10);
  }
  SUBCASE("reliability violation for a decomposed task") {
    inst.tasks[0].asil = Asil::d();
    inst.ecus[0].failure_rate_per_hour = 3e-6;
    inst.ecus[1].failure_rate_per_hour = 3e-6;
    DecompositionScheme bb;
    bb.alpha = {0, 2, 0, 0};
    c.schemes = {bb};
    c.genes = {{{0, 2}, {1, 2}}};
    CHECK(ga_fitness(inst, c, p) == 1000.0 + 10 + 14);
  }
}

TEST_CASE("memory penalty only with the flag") {
  ProblemInstance inst = tiny_instance();
  inst.tasks[0].memory_mb = {2048, 2048, 2048, 2048};  // exceeds both ECUs
  GaChromosome c;
  DecompositionScheme trivial;
  trivial.alpha = {0, 1, 0, 0};
  c.schemes = {trivial};
  c.genes = {{{0, 2}}};
  GaParams p;
  p.penalty_weight = 1000.0;
  CHECK(ga_fitness(inst, c, p) == 10.0);
  p.enforce_memory = true;
  CHECK(ga_fitness(inst, c, p) == 1010.0);
}

TEST_CASE("empty instance has fitness zero and trivial evolution") {
  ProblemInstance inst;
  inst.applications = {"APP1"};
  CHECK(ga_fitness(inst, {}, {}) == 0.0);
  GaResult res = evolve(inst, quick_params(1));
  CHECK(res.best_fitness == 0.0);
}

TEST_CASE("one task with one feasible gene converges immediately") {
  ProblemInstance inst = tiny_instance();
  inst.tasks[0].localization = {1, 0};
  GaResult res = evolve(inst, quick_params(3));
  CHECK(res.best_fitness == 10.0);
  CHECK(res.history.front().best == 10.0);
}

TEST_CASE("elitism keeps the history best nonincreasing") {
  GenConfig cfg;
  cfg.n_tasks = 6;
  cfg.n_ecus = 4;
  cfg.seed = 5;
  cfg.scenario = GenScenario::DOnC;
  ProblemInstance inst = generate_instance(cfg);
  GaResult res = evolve(inst, quick_params(9));
  REQUIRE(!res.history.empty());
  for (size_t g = 1; g < res.history.size(); ++g)
    CHECK(res.history[g].best <= res.history[g - 1].best);
  CHECK(res.best_fitness == res.history.back().best);
}

TEST_CASE("identical seeds give identical histories") {
  GenConfig cfg;
  cfg.n_tasks = 5;
  cfg.n_ecus = 3;
  cfg.seed = 17;
  cfg.scenario = GenScenario::Mixed;
  ProblemInstance inst = generate_instance(cfg);
  GaResult a = evolve(inst, quick_params(42));
  GaResult b = evolve(inst, quick_params(42));
  REQUIRE(a.history.size() == b.history.size());
  for (size_t g = 0; g < a.history.size(); ++g) {
    CHECK(a.history[g].best == b.history[g].best);
    CHECK(a.history[g].mean == b.history[g].mean);
  }
  GaResult c = evolve(inst, quick_params(43));
  bool any_diff = a.best_fitness != c.best_fitness;
  for (size_t g = 0; !any_diff && g < std::min(a.history.size(), c.history.size()); ++g)
    any_diff = a.history[g].mean != c.history[g].mean;
  CHECK(any_diff);  // different seed should not replay the same run
}

TEST_CASE("GA never undercuts the exact optimum") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GenConfig cfg;
    cfg.n_tasks = 5;
    cfg.n_ecus = 4;
    cfg.seed = seed;
    cfg.scenario = seed % 2 ? GenScenario::DOnC : GenScenario::Mixed;
    ProblemInstance inst = generate_instance(cfg);
    MilpModel m = build_model(inst, "APP1", Priority::CostFirst);
    SolveReport rep = solve(m);
    REQUIRE(rep.status == SolveStatus::Optimal);
    GaResult ga = evolve(inst, quick_params(seed));
    CHECK(ga.best_fitness >= rep.best->cost_total - 1e-9);
  }
}

TEST_CASE("GA reaches the known optimum on the memory-guarded case study") {
  ProblemInstance inst = load_instance(CASE_STUDY_JSON);
  GaParams p;
  p.seed = 1;
  p.enforce_memory = true;
  GaResult res = evolve(inst, p);
  CHECK(res.best_fitness >= 98.0);
}

TEST_CASE("invalid parameters are rejected") {
  ProblemInstance inst = tiny_instance();
  GaParams p;
  p.population = 0;
  CHECK_THROWS_AS(evolve(inst, p), std::invalid_argument);
  p = {};
  p.mutation_prob = 1.5;
  CHECK_THROWS_AS(evolve(inst, p), std::invalid_argument);
}
