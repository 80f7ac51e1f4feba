#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "aalloc/model.hpp"
#include "aalloc/solution.hpp"

namespace aalloc {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance files are JSON with top-level keys: ecus, tasks, edges,
// applications, lifetime_hours, decompose_all. Memory values accept plain
// numbers (MB) or strings with an "MB"/"GB" suffix (1 GB = 1024 MB).
ProblemInstance parse_instance(const nlohmann::json& j);
ProblemInstance load_instance(const std::string& path);  // throws ParseError

nlohmann::json instance_to_json(const ProblemInstance& instance);
void save_instance(const ProblemInstance& instance, const std::string& path);

nlohmann::json solution_to_json(const ProblemInstance& instance,
                                const AllocationSolution& solution);

// Aligned plain-text schedule table (one row per placement).
std::string schedule_table(const ProblemInstance& instance, const AllocationSolution& solution);

}  // namespace aalloc
