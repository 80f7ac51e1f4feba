#include "aalloc/model.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace aalloc {

int ProblemInstance::ecu_index(std::string_view id) const {
  for (size_t k = 0; k < ecus.size(); ++k)
    if (ecus[k].id == id) return static_cast<int>(k);
  return -1;
}

int ProblemInstance::task_index(std::string_view id) const {
  for (size_t i = 0; i < tasks.size(); ++i)
    if (tasks[i].id == id) return static_cast<int>(i);
  return -1;
}

std::vector<std::vector<int>> ProblemInstance::successors() const {
  std::vector<std::vector<int>> adj(tasks.size());
  for (const auto& e : edges) {
    int u = task_index(e.from_task);
    int v = task_index(e.to_task);
    if (u >= 0 && v >= 0) adj[u].push_back(v);
  }
  return adj;
}

std::optional<std::vector<int>> ProblemInstance::topological_order() const {
  auto adj = successors();
  std::vector<int> indeg(tasks.size(), 0);
  for (const auto& vs : adj)
    for (int v : vs) ++indeg[v];
  std::vector<int> order;
  order.reserve(tasks.size());
  // Smallest-index-first for a deterministic order.
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (size_t i = 0; i < tasks.size(); ++i)
    if (indeg[i] == 0) ready.push(static_cast<int>(i));
  while (!ready.empty()) {
    int u = ready.top();
    ready.pop();
    order.push_back(u);
    for (int v : adj[u])
      if (--indeg[v] == 0) ready.push(v);
  }
  if (order.size() != tasks.size()) return std::nullopt;
  return order;
}

int ProblemInstance::edge_between(int from, int to) const {
  for (size_t e = 0; e < edges.size(); ++e) {
    if (task_index(edges[e].from_task) == from && task_index(edges[e].to_task) == to)
      return static_cast<int>(e);
  }
  return -1;
}

std::vector<Diagnostic> validate_instance(const ProblemInstance& instance) {
  std::vector<Diagnostic> out;
  auto err = [&](std::string code, std::string entity, std::string msg) {
    out.push_back({std::move(code), std::move(entity), std::move(msg), false});
  };
  auto warn = [&](std::string code, std::string entity, std::string msg) {
    out.push_back({std::move(code), std::move(entity), std::move(msg), true});
  };

  std::set<std::string> ids;
  for (const auto& e : instance.ecus) {
    if (!ids.insert(e.id).second) err("duplicate-id", e.id, "duplicate ECU id");
    if (e.memory_mb <= 0) err("ecu-memory", e.id, "memory_mb must be positive");
    if (e.failure_rate_per_hour <= 0)
      err("ecu-failure-rate", e.id, "failure_rate_per_hour must be positive");
    if (e.asil < Asil::a() || e.asil > Asil::d())
      err("ecu-asil", e.id, "ECU ASIL must be one of A..D");
  }
  std::set<std::string> app_ids(instance.applications.begin(), instance.applications.end());
  for (const auto& t : instance.tasks) {
    if (!ids.insert(t.id).second) err("duplicate-id", t.id, "duplicate task id");
    if (t.asil.value() < 1) err("task-asil", t.id, "task ASIL must be at least A");
    if (!app_ids.count(t.application_id))
      err("unknown-application", t.id, "application_id '" + t.application_id + "' not declared");
    size_t m = instance.ecus.size();
    if (t.wcet_ms.size() != m || t.dev_cost.size() != m || t.localization.size() != m) {
      err("table-shape", t.id, "per-ECU tables must cover every ECU");
      continue;
    }
    for (size_t k = 0; k < m; ++k) {
      if (!t.localization[k]) continue;
      for (int h = 1; h <= 4; ++h) {
        if (t.wcet_ms[k][h - 1] <= 0)
          err("wcet-positive", t.id,
              "wcet must be positive on " + instance.ecus[k].id + " at ASIL " +
                  Asil::from_value(h).name());
        if (t.dev_cost[k][h - 1] < 0)
          err("cost-nonnegative", t.id, "dev_cost must be nonnegative on " + instance.ecus[k].id);
      }
      for (int h = 1; h < 4; ++h) {
        if (t.wcet_ms[k][h] < t.wcet_ms[k][h - 1]) {
          warn("wcet-monotonicity", t.id,
               "wcet decreases from ASIL " + Asil::from_value(h).name() + " to " +
                   Asil::from_value(h + 1).name() + " on " + instance.ecus[k].id);
        }
      }
    }
    for (int h = 0; h < 4; ++h)
      if (t.memory_mb[h] <= 0) err("task-memory", t.id, "memory_mb must be positive for every ASIL");
  }
  if (instance.lifetime_hours <= 0)
    err("lifetime", "", "lifetime_hours must be positive");

  for (const auto& e : instance.edges) {
    std::string label = e.from_task + "->" + e.to_task;
    if (e.from_task == e.to_task) err("self-dependency", label, "edge endpoints must differ");
    if (instance.task_index(e.from_task) < 0)
      err("unknown-task", label, "edge source '" + e.from_task + "' does not exist");
    if (instance.task_index(e.to_task) < 0)
      err("unknown-task", label, "edge target '" + e.to_task + "' does not exist");
    if (e.wcrt_ms < 0) err("wcrt-nonnegative", label, "wcrt_ms must be nonnegative");
  }
  bool endpoints_ok =
      std::all_of(instance.edges.begin(), instance.edges.end(), [&](const DependencyEdge& e) {
        return e.from_task != e.to_task && instance.task_index(e.from_task) >= 0 &&
               instance.task_index(e.to_task) >= 0;
      });
  if (endpoints_ok && !instance.topological_order())
    err("not-a-dag", "", "dependency graph contains a cycle");
  return out;
}

std::vector<int> compute_decomposition_set(const ProblemInstance& instance) {
  std::vector<int> out;
  if (instance.decompose_all) {
    for (size_t i = 0; i < instance.tasks.size(); ++i) out.push_back(static_cast<int>(i));
    return out;
  }
  Asil max_ecu = Asil::qm();
  for (const auto& e : instance.ecus) max_ecu = std::max(max_ecu, e.asil);
  for (size_t i = 0; i < instance.tasks.size(); ++i)
    if (instance.tasks[i].asil > max_ecu) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace aalloc
