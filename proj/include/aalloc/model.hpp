#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aalloc/asil.hpp"

namespace aalloc {

struct Ecu {
  std::string id;
  Asil asil;                        // A..D; QM ECUs are not modeled
  int memory_mb = 0;
  double failure_rate_per_hour = 0; // > 0
};

// Per-task parameters. The per-ECU tables are index-aligned with
// ProblemInstance::ecus; entries are meaningful where localization[k] != 0.
struct Task {
  std::string id;
  Asil asil;                        // requirement, >= A
  std::string application_id;
  std::array<int, 4> memory_mb{};   // indexed by h-1, h in 1..4
  std::vector<std::array<double, 4>> wcet_ms;   // [ecu][h-1]
  std::vector<std::array<double, 4>> dev_cost;  // [ecu][h-1]
  std::vector<char> localization;               // [ecu], 0/1
};

struct DependencyEdge {
  std::string from_task;
  std::string to_task;
  double wcrt_ms = 0;   // applies when endpoints land on distinct ECUs
};

struct Diagnostic {
  std::string code;     // short invariant name, e.g. "not-a-dag"
  std::string entity;   // offending task/ecu/edge id
  std::string message;
  bool warning = false; // warnings do not fail validation
};

struct ProblemInstance {
  std::vector<Ecu> ecus;
  std::vector<Task> tasks;
  std::vector<DependencyEdge> edges;
  std::vector<std::string> applications;
  double lifetime_hours = 5000.0;
  bool decompose_all = false;

  int ecu_index(std::string_view id) const;
  int task_index(std::string_view id) const;

  // Adjacency by task index; entries valid only when all edge endpoints resolve.
  std::vector<std::vector<int>> successors() const;
  // nullopt when the dependency graph has a cycle.
  std::optional<std::vector<int>> topological_order() const;
  // Direct-edge lookup; -1 when no edge Ti -> Tj exists, else edge index.
  int edge_between(int from, int to) const;
};

// Empty iff all type invariants hold (warnings aside). Each diagnostic names
// the violated invariant and the offending entity.
std::vector<Diagnostic> validate_instance(const ProblemInstance& instance);

// T' = { Ti : Lambda_Ti > max_k Lambda_Ek }, or all tasks when decompose_all.
// Returned indices are sorted ascending.
std::vector<int> compute_decomposition_set(const ProblemInstance& instance);

}  // namespace aalloc
