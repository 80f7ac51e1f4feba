#pragma once

#include <cstdint>
#include <vector>

#include "aalloc/decomposition.hpp"
#include "aalloc/model.hpp"

namespace aalloc {

// One replica slot: hosting ECU index and assigned ASIL value (1..4).
// ecu < 0 marks an unplaceable slot (no capable ECU); always penalized.
struct GaGene {
  int ecu = -1;
  int asil = 0;
};

// Variable-length encoding: per task, a decomposition scheme plus one gene per
// replica (levels descending, ECUs pairwise distinct within a task).
struct GaChromosome {
  std::vector<DecompositionScheme> schemes;   // [task]
  std::vector<std::vector<GaGene>> genes;     // [task][replica]
};

struct GaParams {
  int population = 100;
  int generations = 200;
  int tournament = 3;
  double crossover_prob = 0.9;
  double mutation_prob = 0.1;
  double penalty_weight = -1;  // < 0: auto, 10 x sum of per-task max costs
  std::uint64_t seed = 1;
  bool enforce_memory = false;        // add penalties for ECU memory overruns
  bool enforce_localization = false;  // restrict genes to localized ECUs
};

struct GaGenerationStats {
  double best = 0;   // best fitness in the population (after elitism)
  double mean = 0;
};

struct GaResult {
  GaChromosome best;
  double best_fitness = 0;
  std::vector<GaGenerationStats> history;  // one entry per generation
};

// Total development cost of the genes plus penalty_weight per violated
// constraint: one per task failing its reliability budget or duplicating an
// ECU, one per over-capacity ECU when enforce_memory is set. Lower is better.
double ga_fitness(const ProblemInstance& instance, const GaChromosome& chromosome,
                  const GaParams& params);

// Penalty-based GA: tournament selection, task-boundary single-point
// crossover, gene mutation with distinct-ECU repair, elitism of one.
// Deterministic given the seed. Scheduling is intentionally ignored.
GaResult evolve(const ProblemInstance& instance, const GaParams& params);

}  // namespace aalloc
