#pragma once

#include <stdexcept>
#include <string>

#include "aalloc/model.hpp"
#include "aalloc/solution.hpp"
#include "aalloc/solver.hpp"

namespace aalloc {

class OracleTooLarge : public std::runtime_error {
 public:
  OracleTooLarge(double estimate, const std::string& what)
      : std::runtime_error(what), estimate(estimate) {}
  double estimate;
};

struct OracleResult {
  SolveStatus status = SolveStatus::Infeasible;
  double primary = 0;
  double secondary = 0;
  std::optional<AllocationSolution> best;
};

// Exhaustive lexicographic optimum: decomposition schemes, injective replica
// placements, and earliest-start list scheduling over every linear extension
// of the dependency graph. Constraints are evaluated directly (product-form
// reliability, memory sums, interval semantics); no shared machinery with the
// branch-and-bound solver or the linearized model. Refuses when the estimated
// search space exceeds size_limit.
OracleResult brute_force_optimum(const ProblemInstance& instance, Priority priority,
                                 const std::string& focus_app = "", double size_limit = 1e7);

}  // namespace aalloc
