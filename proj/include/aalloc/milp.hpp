#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aalloc/model.hpp"
#include "aalloc/solution.hpp"

namespace aalloc {

struct MilpVariable {
  enum class Kind { Binary, Integer, Continuous };
  std::string name;
  Kind kind = Kind::Binary;
  double lo = 0;
  double hi = 1;
};

struct LinearConstraint {
  enum class Sense { LE, EQ, GE };
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  Sense sense = Sense::LE;
  double rhs = 0;
  std::string tag;  // source constraint family, e.g. "eq13"
};

struct LinearExpr {
  std::vector<std::pair<int, double>> terms;
};

enum class Priority { CostFirst, LatencyFirst };

// Raised when the model is provably infeasible at build time.
class BuildInfeasibleError : public std::runtime_error {
 public:
  BuildInfeasibleError(std::string task_id, const std::string& what)
      : std::runtime_error(what), task_id(std::move(task_id)) {}
  std::string task_id;
};

struct MilpModel {
  std::vector<MilpVariable> variables;
  std::vector<LinearConstraint> constraints;
  std::array<LinearExpr, 2> objectives;  // ordered by priority, both minimized
  double big_m = 0;

  // Structured view consumed by the embedded solver.
  const ProblemInstance* instance = nullptr;
  std::string focus_app;
  Priority priority = Priority::CostFirst;
  bool strict_pmhf = false;
  std::vector<int> tprime;  // decomposition-required task indices

  std::unordered_map<std::string, int> var_index;
  int var(const std::string& name) const;
  bool has_var(const std::string& name) const { return var_index.count(name) != 0; }
};

// Compiles the instance into a solver-neutral model covering mapping,
// decomposition, memory, ASIL compatibility, scheduling (Big-M linearized)
// and the log-linear reliability constraints. Throws BuildInfeasibleError
// when some task admits no compatible decomposition scheme.
MilpModel build_model(const ProblemInstance& instance, const std::string& focus_app,
                      Priority priority, bool strict_pmhf = false);

// Writes the stage-1 model in LP text format (constraint tags as comments).
void export_lp(const MilpModel& model, const std::string& path);

// Stage-2 template: secondary objective plus a bound on the primary
// expression. Without a bound the RHS is the placeholder {{STAGE1_BOUND}}
// and the file is a template rather than parseable LP input.
void export_lp_stage2(const MilpModel& model, const std::string& path,
                      std::optional<double> stage1_bound = std::nullopt);

struct Violation {
  std::string tag;      // constraint family, e.g. "eq11"
  std::string message;
};

// Direct re-check of a concrete solution against the instance: product-form
// reliability, interval-overlap scan per ECU, precedence with WCRT, memory
// sums, scheme structure. Independent of the linearized model.
std::vector<Violation> validate_solution(const ProblemInstance& instance,
                                         const AllocationSolution& solution,
                                         bool strict_pmhf = false);

}  // namespace aalloc
