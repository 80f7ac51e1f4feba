#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aalloc/decomposition.hpp"

namespace aalloc {

struct Placement {
  std::string task_id;
  std::string ecu_id;
  int asil_value = 0;    // assigned level h
  double start_ms = 0;   // tau
};

struct AllocationSolution {
  std::vector<Placement> placements;
  std::map<std::string, DecompositionScheme> scheme_per_task;
  double cost_total = 0;
  std::map<std::string, double> makespan_per_app;
  // theta diagnostic: theta[{Ti,Tj}] = 0 means Tj precedes Ti wherever the two
  // tasks share an ECU. Pairs without an ordering obligation carry 1.
  std::map<std::pair<std::string, std::string>, int> ordering;
};

}  // namespace aalloc
