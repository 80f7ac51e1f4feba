#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aalloc/milp.hpp"
#include "aalloc/solution.hpp"

namespace aalloc {

struct SolveLimits {
  double time_limit_s = 120.0;
  long long node_limit = -1;  // < 0 means unlimited
};

enum class SolveStatus { Optimal, Infeasible, Timeout };

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<AllocationSolution> best;
  std::vector<double> stage_objectives;          // primary then secondary, when known
  std::vector<std::vector<double>> incumbents;   // per stage, strictly improving
  long long nodes = 0;
  double wall_s = 0;
  std::string note;
};

// Exact lexicographic two-stage solve by depth-first branch-and-bound over
// decomposition schemes, replica placements and co-location orderings.
// Deterministic for identical inputs.
SolveReport solve(const MilpModel& model, const SolveLimits& limits = {});

// One replica assignment (ecu index, assigned ASIL value) per entry.
using TaskAssignment = std::vector<std::pair<int, int>>;
// Indexed by task; non-decomposed tasks carry a single replica.
using Mapping = std::vector<TaskAssignment>;

// theta[i][j] = 0 means Tj precedes Ti wherever the two tasks share an ECU;
// 1 leaves the pair unordered (paper convention).
struct ThetaOrdering {
  std::vector<std::vector<int>> theta;
};

struct Schedule {
  // start_ms[i][r] for replica r of task i, parallel to the Mapping.
  std::vector<std::vector<double>> start_ms;
  double makespan = 0;  // over the whole task set
};

// Earliest-start times as longest-path distances over the difference
// constraints induced by the fixed mapping and ordering. nullopt when the
// ordering contradicts itself or the dependency graph (positive cycle).
std::optional<Schedule> resolve_schedule(const ProblemInstance& instance, const Mapping& mapping,
                                         const ThetaOrdering& ordering);

}  // namespace aalloc
