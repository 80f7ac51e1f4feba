#include "aalloc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "aalloc/decomposition.hpp"
#include "aalloc/reliability.hpp"

namespace aalloc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
  DecompositionScheme scheme;
  std::vector<std::pair<int, int>> replicas;  // (ecu, h)
  double cost = 0;
};

// Injective placements of a scheme's replicas, ASIL-capable and localized,
// reliability-checked in product form.
void expand(const ProblemInstance& inst, const Task& t, const DecompositionScheme& scheme,
            std::vector<Candidate>& out) {
  auto levels = scheme.replica_levels();
  std::vector<std::pair<int, int>> current;
  std::vector<char> used(inst.ecus.size(), 0);
  auto rec = [&](auto&& self, size_t pos) -> void {
    if (pos == levels.size()) {
      std::vector<double> rates;
      for (auto& [k, h] : current) rates.push_back(inst.ecus[k].failure_rate_per_hour);
      if (!check_pmhf(t.asil, rates, inst.lifetime_hours).ok) return;
      Candidate c;
      c.scheme = scheme;
      c.replicas = current;
      for (auto& [k, h] : current) c.cost += t.dev_cost[k][h - 1];
      out.push_back(std::move(c));
      return;
    }
    int h = levels[pos];
    int k_min = (pos > 0 && levels[pos - 1] == h) ? current[pos - 1].first + 1 : 0;
    for (int k = k_min; k < static_cast<int>(inst.ecus.size()); ++k) {
      if (used[k] || !t.localization[k] || h > inst.ecus[k].asil.value()) continue;
      used[k] = 1;
      current.push_back({k, h});
      self(self, pos + 1);
      current.pop_back();
      used[k] = 0;
    }
  };
  rec(rec, 0);
}

struct World {
  const ProblemInstance* inst;
  std::string focus_app;
  int n, ne;
  std::vector<std::vector<Candidate>> cands;
  std::vector<std::vector<int>> preds;       // direct predecessors
  std::vector<std::vector<double>> wcrt;     // -1 when absent
  std::vector<std::vector<int>> extensions;  // all linear extensions of the DAG
};

void all_extensions(const World& w, std::vector<int>& placed, std::vector<char>& done,
                    std::vector<std::vector<int>>& out) {
  if (static_cast<int>(placed.size()) == w.n) {
    out.push_back(placed);
    return;
  }
  for (int i = 0; i < w.n; ++i) {
    if (done[i]) continue;
    bool ready = true;
    for (int p : w.preds[i])
      if (!done[p]) ready = false;
    if (!ready) continue;
    done[i] = 1;
    placed.push_back(i);
    all_extensions(w, placed, done, out);
    placed.pop_back();
    done[i] = 0;
  }
}

struct ScheduleOut {
  double makespan = 0;
  std::vector<std::vector<double>> starts;  // per task, per replica
};

// Earliest-start list scheduling along one total order: each replica starts
// at the later of its ECU becoming free and its dependencies being delivered.
ScheduleOut list_schedule(const World& w, const std::vector<const Candidate*>& sel,
                          const std::vector<int>& order) {
  ScheduleOut out;
  out.starts.assign(w.n, {});
  std::vector<double> ecu_free(w.ne, 0.0);
  std::vector<std::vector<double>> finish(w.n);
  for (int i : order) {
    const auto& reps = sel[i]->replicas;
    out.starts[i].assign(reps.size(), 0.0);
    finish[i].assign(reps.size(), 0.0);
    for (size_t r = 0; r < reps.size(); ++r) {
      auto [k, h] = reps[r];
      double ready = 0;
      for (int p : w.preds[i]) {
        const auto& preps = sel[p]->replicas;
        for (size_t q = 0; q < preps.size(); ++q) {
          double delivered = finish[p][q] + (preps[q].first != k ? w.wcrt[p][i] : 0.0);
          ready = std::max(ready, delivered);
        }
      }
      double start = std::max(ready, ecu_free[k]);
      out.starts[i][r] = start;
      finish[i][r] = start + w.inst->tasks[i].wcet_ms[k][h - 1];
      ecu_free[k] = finish[i][r];
      if (w.inst->tasks[i].application_id == w.focus_app)
        out.makespan = std::max(out.makespan, finish[i][r]);
    }
  }
  return out;
}

struct BestSchedule {
  double makespan = kInf;
  ScheduleOut sched;
  const std::vector<int>* order = nullptr;
};

BestSchedule best_makespan(const World& w, const std::vector<const Candidate*>& sel) {
  BestSchedule best;
  for (const auto& order : w.extensions) {
    ScheduleOut s = list_schedule(w, sel, order);
    if (s.makespan < best.makespan) {
      best.makespan = s.makespan;
      best.sched = std::move(s);
      best.order = &order;
    }
  }
  return best;
}

bool memory_ok(const World& w, const std::vector<const Candidate*>& sel) {
  std::vector<long> use(w.ne, 0);
  for (int i = 0; i < w.n; ++i)
    for (auto& [k, h] : sel[i]->replicas) use[k] += w.inst->tasks[i].memory_mb[h - 1];
  for (int k = 0; k < w.ne; ++k)
    if (use[k] > w.inst->ecus[k].memory_mb) return false;
  return true;
}

void for_each_mapping(const World& w, int i, std::vector<const Candidate*>& sel,
                      const std::function<void()>& fn) {
  if (i == w.n) {
    if (memory_ok(w, sel)) fn();
    return;
  }
  for (const auto& c : w.cands[i]) {
    sel[i] = &c;
    for_each_mapping(w, i + 1, sel, fn);
  }
  sel[i] = nullptr;
}

AllocationSolution to_solution(const World& w, const std::vector<const Candidate*>& sel,
                               const ScheduleOut& sched) {
  const ProblemInstance& inst = *w.inst;
  AllocationSolution sol;
  for (int i = 0; i < w.n; ++i) {
    sol.scheme_per_task[inst.tasks[i].id] = sel[i]->scheme;
    for (size_t r = 0; r < sel[i]->replicas.size(); ++r) {
      auto [k, h] = sel[i]->replicas[r];
      sol.placements.push_back({inst.tasks[i].id, inst.ecus[k].id, h, sched.starts[i][r]});
      sol.cost_total += inst.tasks[i].dev_cost[k][h - 1];
    }
  }
  for (const auto& app : inst.applications) {
    double mk = 0;
    for (const auto& p : sol.placements) {
      int i = inst.task_index(p.task_id);
      int k = inst.ecu_index(p.ecu_id);
      if (inst.tasks[i].application_id != app) continue;
      mk = std::max(mk, p.start_ms + inst.tasks[i].wcet_ms[k][p.asil_value - 1]);
    }
    sol.makespan_per_app[app] = mk;
  }
  return sol;
}

}  // namespace

OracleResult brute_force_optimum(const ProblemInstance& instance, Priority priority,
                                 const std::string& focus_app, double size_limit) {
  World w;
  w.inst = &instance;
  w.focus_app = focus_app.empty() && !instance.applications.empty() ? instance.applications.front()
                                                                    : focus_app;
  w.n = static_cast<int>(instance.tasks.size());
  w.ne = static_cast<int>(instance.ecus.size());

  auto tprime = compute_decomposition_set(instance);
  std::vector<char> in_tprime(w.n, 0);
  for (int i : tprime) in_tprime[i] = 1;
  w.cands.resize(w.n);
  for (int i = 0; i < w.n; ++i) {
    const Task& t = instance.tasks[i];
    if (in_tprime[i]) {
      for (const auto& s : enumerate_schemes(t.asil)) expand(instance, t, s, w.cands[i]);
    } else {
      int h = t.asil.value();
      for (int k = 0; k < w.ne; ++k) {
        if (!t.localization[k] || t.asil > instance.ecus[k].asil) continue;
        Candidate c;
        c.scheme.alpha[h - 1] = 1;
        c.replicas = {{k, h}};
        c.cost = t.dev_cost[k][h - 1];
        w.cands[i].push_back(std::move(c));
      }
    }
    if (w.cands[i].empty()) return {};  // infeasible
  }

  w.preds.resize(w.n);
  w.wcrt.assign(w.n, std::vector<double>(w.n, -1.0));
  for (const auto& e : instance.edges) {
    int i = instance.task_index(e.from_task);
    int j = instance.task_index(e.to_task);
    if (i >= 0 && j >= 0 && i != j) {
      w.preds[j].push_back(i);
      w.wcrt[i][j] = e.wcrt_ms;
    }
  }
  {
    std::vector<int> placed;
    std::vector<char> done(w.n, 0);
    all_extensions(w, placed, done, w.extensions);
  }
  double estimate = static_cast<double>(w.extensions.size());
  for (int i = 0; i < w.n; ++i) estimate *= static_cast<double>(w.cands[i].size());
  if (estimate > size_limit)
    throw OracleTooLarge(estimate, "oracle search space ~" + std::to_string(estimate) +
                                       " exceeds limit " + std::to_string(size_limit));

  std::vector<const Candidate*> sel(w.n, nullptr);
  OracleResult res;
  if (priority == Priority::CostFirst) {
    double best_cost = kInf;
    for_each_mapping(w, 0, sel, [&] {
      double c = 0;
      for (int i = 0; i < w.n; ++i) c += sel[i]->cost;
      best_cost = std::min(best_cost, c);
    });
    if (best_cost == kInf) return res;
    double best_lat = kInf;
    std::vector<const Candidate*> best_sel;
    ScheduleOut best_sched;
    for_each_mapping(w, 0, sel, [&] {
      double c = 0;
      for (int i = 0; i < w.n; ++i) c += sel[i]->cost;
      if (c > best_cost + 1e-9) return;
      BestSchedule bs = best_makespan(w, sel);
      if (bs.makespan < best_lat) {
        best_lat = bs.makespan;
        best_sel = sel;
        best_sched = bs.sched;
      }
    });
    res.status = SolveStatus::Optimal;
    res.primary = best_cost;
    res.secondary = best_lat;
    res.best = to_solution(w, best_sel, best_sched);
  } else {
    double best_lat = kInf;
    for_each_mapping(w, 0, sel, [&] {
      best_lat = std::min(best_lat, best_makespan(w, sel).makespan);
    });
    if (best_lat == kInf) return res;
    double best_cost = kInf;
    std::vector<const Candidate*> best_sel;
    ScheduleOut best_sched;
    for_each_mapping(w, 0, sel, [&] {
      double c = 0;
      for (int i = 0; i < w.n; ++i) c += sel[i]->cost;
      if (c >= best_cost) return;
      BestSchedule bs = best_makespan(w, sel);
      if (bs.makespan <= best_lat * (1.0 + 1e-6) + 1e-12) {
        best_cost = c;
        best_sel = sel;
        best_sched = bs.sched;
      }
    });
    res.status = SolveStatus::Optimal;
    res.primary = best_lat;
    res.secondary = best_cost;
    res.best = to_solution(w, best_sel, best_sched);
  }
  return res;
}

}  // namespace aalloc
