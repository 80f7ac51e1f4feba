#include "aalloc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include "aalloc/reliability.hpp"

namespace aalloc {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Option {
  DecompositionScheme scheme;
  TaskAssignment replicas;  // (ecu, h), deterministic order
  double cost = 0;
  double max_wcet = 0;
};

struct Rel {
  // before[i*n+j] != 0 means Ti precedes Tj (transitively closed)
  std::vector<char> before;
  int n = 0;
  char at(int i, int j) const { return before[i * n + j]; }
  void set(int i, int j) { before[i * n + j] = 1; }
};

struct Ctx {
  const ProblemInstance* inst = nullptr;
  std::string focus_app;
  int n = 0, ne = 0;
  std::vector<std::vector<Option>> options;  // per task, cost ascending
  std::vector<int> topo;                     // mapping DFS order
  std::vector<double> suffix_min_cost;       // by topo position
  std::vector<double> min_maxwcet;           // per task
  Rel dag_reach;
  std::vector<std::vector<double>> wcrt;     // -1 when no direct edge
  std::vector<char> in_app;

  Clock::time_point deadline;
  bool use_deadline = false;
  long long node_limit = -1;
  long long nodes = 0;
  bool aborted = false;

  bool tick() {
    ++nodes;
    if (node_limit >= 0 && nodes > node_limit) aborted = true;
    if (use_deadline && (nodes & 1023) == 0 && Clock::now() > deadline) aborted = true;
    return !aborted;
  }
};

// All injective replica placements for one scheme, canonical order: levels
// descending, equal-level runs with strictly increasing ECU index.
void expand_scheme(const ProblemInstance& inst, const Task& t, const DecompositionScheme& scheme,
                   std::vector<Option>& out) {
  auto levels = scheme.replica_levels();
  TaskAssignment current;
  std::vector<char> used(inst.ecus.size(), 0);
  auto rec = [&](auto&& self, size_t pos) -> void {
    if (pos == levels.size()) {
      std::vector<double> rates;
      for (auto& [k, h] : current) rates.push_back(inst.ecus[k].failure_rate_per_hour);
      if (!check_pmhf(t.asil, rates, inst.lifetime_hours).ok) return;
      Option o;
      o.scheme = scheme;
      o.replicas = current;
      for (auto& [k, h] : current) {
        o.cost += t.dev_cost[k][h - 1];
        o.max_wcet = std::max(o.max_wcet, t.wcet_ms[k][h - 1]);
      }
      out.push_back(std::move(o));
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

std::vector<Option> build_options(const ProblemInstance& inst, int i, bool decomposed,
                                  bool strict_pmhf) {
  const Task& t = inst.tasks[i];
  std::vector<Option> out;
  if (decomposed) {
    for (const auto& s : filter_compatible(enumerate_schemes(t.asil), inst.ecus))
      expand_scheme(inst, t, s, out);
  } else {
    int h = t.asil.value();
    for (int k = 0; k < static_cast<int>(inst.ecus.size()); ++k) {
      if (!t.localization[k] || t.asil > inst.ecus[k].asil) continue;
      if (strict_pmhf) {
        double rate = inst.ecus[k].failure_rate_per_hour;
        if (!check_pmhf(t.asil, std::span(&rate, 1), inst.lifetime_hours).ok) continue;
      }
      Option o;
      o.scheme.alpha[h - 1] = 1;
      o.replicas = {{k, h}};
      o.cost = t.dev_cost[k][h - 1];
      o.max_wcet = t.wcet_ms[k][h - 1];
      out.push_back(std::move(o));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Option& a, const Option& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.replicas < b.replicas;
  });
  return out;
}

// Earliest-start times under the current precedence relation. Pairs without a
// decided order contribute no arc, so the result is a lower bound that becomes
// exact once every co-located pair is ordered.
struct Starts {
  std::vector<std::vector<double>> s;  // [task][replica]
  double makespan_all = 0;
  double makespan_app = 0;
};

bool compute_starts(const Ctx& ctx, const std::vector<const Option*>& chosen, const Rel& rel,
                    Starts& out) {
  const int n = ctx.n;
  // Topological order over direct edges plus decided orderings.
  std::vector<std::vector<int>> adj(n);
  std::vector<int> indeg(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && (ctx.wcrt[i][j] >= 0 || rel.at(i, j))) {
        adj[i].push_back(j);
        ++indeg[j];
      }
  std::priority_queue<int, std::vector<int>, std::greater<>> q;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) q.push(i);
  std::vector<int> order;
  order.reserve(n);
  while (!q.empty()) {
    int u = q.top();
    q.pop();
    order.push_back(u);
    for (int v : adj[u])
      if (--indeg[v] == 0) q.push(v);
  }
  if (static_cast<int>(order.size()) != n) return false;

  out.s.assign(n, {});
  out.makespan_all = 0;
  out.makespan_app = 0;
  for (int j : order) {
    if (!chosen[j]) continue;
    const auto& reps_j = chosen[j]->replicas;
    out.s[j].assign(reps_j.size(), 0.0);
    for (size_t rj = 0; rj < reps_j.size(); ++rj) {
      auto [m, h2] = reps_j[rj];
      double s = 0;
      for (int i = 0; i < n; ++i) {
        if (i == j || !chosen[i] || out.s[i].empty()) continue;
        bool direct = ctx.wcrt[i][j] >= 0;
        bool ordered = rel.at(i, j) != 0;
        if (!direct && !ordered) continue;
        const auto& reps_i = chosen[i]->replicas;
        for (size_t ri = 0; ri < reps_i.size(); ++ri) {
          auto [k, h1] = reps_i[ri];
          double wcet_i = ctx.inst->tasks[i].wcet_ms[k][h1 - 1];
          if (direct) {
            double gap = out.s[i][ri] + wcet_i + (k != m ? ctx.wcrt[i][j] : 0.0);
            s = std::max(s, gap);
          } else if (k == m) {
            // resource ordering on the shared ECU
            s = std::max(s, out.s[i][ri] + wcet_i);
          }
        }
      }
      out.s[j][rj] = s;
      double fin = s + ctx.inst->tasks[j].wcet_ms[m][h2 - 1];
      out.makespan_all = std::max(out.makespan_all, fin);
      if (ctx.in_app[j]) out.makespan_app = std::max(out.makespan_app, fin);
    }
  }
  return true;
}

bool colocated(const std::vector<const Option*>& chosen, int i, int j) {
  for (auto& [k1, h1] : chosen[i]->replicas)
    for (auto& [k2, h2] : chosen[j]->replicas)
      if (k1 == k2) return true;
  return false;
}

Rel close_with(const Rel& rel, int a, int b) {
  Rel out = rel;
  int n = rel.n;
  for (int p = 0; p < n; ++p) {
    if (p != a && !rel.at(p, a)) continue;
    for (int q = 0; q < n; ++q) {
      if (q != b && !rel.at(b, q)) continue;
      if (p != q) out.set(p, q);
    }
  }
  out.set(a, b);
  return out;
}

struct OrderingResult {
  bool found = false;
  double makespan = 0;
  Rel rel;
  Starts starts;
};

// Minimum application makespan over decided orderings of co-located
// independent pairs. In satisfy mode the search stops at the first ordering
// meeting the bound.
void ordering_dfs(Ctx& ctx, const std::vector<const Option*>& chosen, const Rel& rel, double bound,
                  bool satisfy, OrderingResult& best) {
  if (!ctx.tick()) return;
  Starts st;
  if (!compute_starts(ctx, chosen, rel, st)) return;  // contradictory order
  if (satisfy) {
    if (st.makespan_app > bound) return;
  } else {
    if (best.found && st.makespan_app >= best.makespan) return;
    if (st.makespan_app >= bound) return;
  }
  // first undecided co-located pair
  for (int i = 0; i < ctx.n; ++i) {
    for (int j = i + 1; j < ctx.n; ++j) {
      if (rel.at(i, j) || rel.at(j, i)) continue;
      if (!colocated(chosen, i, j)) continue;
      ordering_dfs(ctx, chosen, close_with(rel, i, j), bound, satisfy, best);
      if (ctx.aborted || (satisfy && best.found)) return;
      ordering_dfs(ctx, chosen, close_with(rel, j, i), bound, satisfy, best);
      return;
    }
  }
  // leaf: every co-located pair ordered, the bound is exact
  if (!best.found || st.makespan_app < best.makespan) {
    best.found = true;
    best.makespan = st.makespan_app;
    best.rel = rel;
    best.starts = st;
  }
}

OrderingResult min_makespan(Ctx& ctx, const std::vector<const Option*>& chosen, double bound,
                            bool satisfy) {
  OrderingResult best;
  ordering_dfs(ctx, chosen, ctx.dag_reach, bound, satisfy, best);
  return best;
}

// Admissible makespan lower bound for a partial mapping: critical path over
// the task graph (unmapped tasks at their cheapest-possible duration) and the
// heaviest committed ECU load.
double latency_lower_bound(const Ctx& ctx, const std::vector<const Option*>& chosen) {
  const int n = ctx.n;
  std::vector<double> dur(n), finish(n, -1);
  for (int i = 0; i < n; ++i) dur[i] = chosen[i] ? chosen[i]->max_wcet : ctx.min_maxwcet[i];

  double lb = 0;
  // tasks in ctx.topo order are safe for a forward pass over direct edges
  std::vector<double> start(n, 0.0);
  for (int idx = 0; idx < n; ++idx) {
    int j = ctx.topo[idx];
    for (int i = 0; i < n; ++i) {
      if (i == j || ctx.wcrt[i][j] < 0) continue;
      double extra = 0;
      if (chosen[i] && chosen[j] && !colocated(chosen, i, j)) extra = ctx.wcrt[i][j];
      start[j] = std::max(start[j], start[i] + dur[i] + extra);
    }
    if (ctx.in_app[j]) lb = std::max(lb, start[j] + dur[j]);
  }
  std::vector<double> load(ctx.ne, 0.0);
  for (int i = 0; i < n; ++i) {
    if (!chosen[i]) continue;
    for (auto& [k, h] : chosen[i]->replicas) load[k] += ctx.inst->tasks[i].wcet_ms[k][h - 1];
  }
  for (int k = 0; k < ctx.ne; ++k) lb = std::max(lb, load[k]);
  return lb;
}

struct StageBest {
  bool found = false;
  double value = 0;
  std::vector<const Option*> mapping;
  OrderingResult ordering;  // valid when the stage involves scheduling
  std::vector<double> incumbents;
};

struct StageGoal {
  bool minimize_cost = true;           // else minimize latency
  std::optional<double> cost_bound;    // inclusive
  std::optional<double> latency_bound; // inclusive
};

void mapping_dfs(Ctx& ctx, const StageGoal& goal, int pos, std::vector<const Option*>& chosen,
                 std::vector<long>& mem_used, double cost, StageBest& best) {
  if (!ctx.tick()) return;
  double rest = ctx.suffix_min_cost[pos];
  if (goal.cost_bound && cost + rest > *goal.cost_bound + 1e-9) return;
  if (goal.minimize_cost && best.found && cost + rest >= best.value) return;
  if (goal.latency_bound || !goal.minimize_cost) {
    double lb = latency_lower_bound(ctx, chosen);
    if (goal.latency_bound && lb > *goal.latency_bound + 1e-9) return;
    if (!goal.minimize_cost && best.found && lb >= best.value) return;
  }
  if (pos == ctx.n) {
    if (goal.minimize_cost) {
      if (goal.latency_bound) {
        OrderingResult ord = min_makespan(ctx, chosen, *goal.latency_bound + 1e-9, true);
        if (!ord.found) return;
      }
      if (!best.found || cost < best.value) {
        best.found = true;
        best.value = cost;
        best.mapping = chosen;
        best.ordering = OrderingResult{};
        best.incumbents.push_back(cost);
      }
    } else {
      double ub = best.found ? best.value : kInf;
      OrderingResult ord = min_makespan(ctx, chosen, ub, false);
      if (ord.found && (!best.found || ord.makespan < best.value)) {
        best.found = true;
        best.value = ord.makespan;
        best.mapping = chosen;
        best.ordering = ord;
        best.incumbents.push_back(ord.makespan);
      }
    }
    return;
  }
  int i = ctx.topo[pos];
  for (const Option& o : ctx.options[i]) {
    bool fits = true;
    for (auto& [k, h] : o.replicas) {
      mem_used[k] += ctx.inst->tasks[i].memory_mb[h - 1];
      if (mem_used[k] > ctx.inst->ecus[k].memory_mb) fits = false;
    }
    if (fits) {
      chosen[i] = &o;
      mapping_dfs(ctx, goal, pos + 1, chosen, mem_used, cost + o.cost, best);
      chosen[i] = nullptr;
    }
    for (auto& [k, h] : o.replicas) mem_used[k] -= ctx.inst->tasks[i].memory_mb[h - 1];
    if (ctx.aborted) return;
  }
}

StageBest run_stage(Ctx& ctx, const StageGoal& goal) {
  StageBest best;
  std::vector<const Option*> chosen(ctx.n, nullptr);
  std::vector<long> mem_used(ctx.ne, 0);
  mapping_dfs(ctx, goal, 0, chosen, mem_used, 0.0, best);
  return best;
}

AllocationSolution extract_solution(const Ctx& ctx, const std::vector<const Option*>& mapping,
                                    const OrderingResult& ord) {
  const ProblemInstance& inst = *ctx.inst;
  AllocationSolution sol;
  double cost = 0;
  for (int i = 0; i < ctx.n; ++i) {
    const Option& o = *mapping[i];
    sol.scheme_per_task[inst.tasks[i].id] = o.scheme;
    for (size_t r = 0; r < o.replicas.size(); ++r) {
      auto [k, h] = o.replicas[r];
      double start = (i < static_cast<int>(ord.starts.s.size()) && r < ord.starts.s[i].size())
                         ? ord.starts.s[i][r]
                         : 0.0;
      sol.placements.push_back({inst.tasks[i].id, inst.ecus[k].id, h, start});
      cost += inst.tasks[i].dev_cost[k][h - 1];
    }
  }
  sol.cost_total = cost;
  // Makespans per application from the final start times.
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
  // theta diagnostic: 1 by default, 0 where the counterpart precedes and the
  // pair actually interacts (direct dependency or shared ECU).
  for (int i = 0; i < ctx.n; ++i) {
    for (int j = 0; j < ctx.n; ++j) {
      if (i == j) continue;
      int theta = 1;
      if (ord.rel.n == ctx.n && ord.rel.at(j, i) &&
          (ctx.wcrt[j][i] >= 0 || colocated(mapping, i, j)))
        theta = 0;
      sol.ordering[{inst.tasks[i].id, inst.tasks[j].id}] = theta;
    }
  }
  return sol;
}

Rel dag_reachability(const ProblemInstance& inst) {
  int n = static_cast<int>(inst.tasks.size());
  Rel rel;
  rel.n = n;
  rel.before.assign(size_t(n) * n, 0);
  for (const auto& e : inst.edges) {
    int i = inst.task_index(e.from_task);
    int j = inst.task_index(e.to_task);
    if (i >= 0 && j >= 0 && i != j) rel.set(i, j);
  }
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      if (rel.at(i, m))
        for (int j = 0; j < n; ++j)
          if (rel.at(m, j)) rel.set(i, j);
  return rel;
}

bool init_ctx(Ctx& ctx, const MilpModel& model, const SolveLimits& limits, std::string& note) {
  const ProblemInstance& inst = *model.instance;
  ctx.inst = &inst;
  ctx.focus_app = model.focus_app;
  ctx.n = static_cast<int>(inst.tasks.size());
  ctx.ne = static_cast<int>(inst.ecus.size());
  if (limits.time_limit_s > 0) {
    ctx.use_deadline = true;
    ctx.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(limits.time_limit_s));
  }
  ctx.node_limit = limits.node_limit;

  std::vector<char> in_tprime(ctx.n, 0);
  for (int i : model.tprime) in_tprime[i] = 1;
  ctx.options.resize(ctx.n);
  ctx.min_maxwcet.assign(ctx.n, 0);
  for (int i = 0; i < ctx.n; ++i) {
    ctx.options[i] = build_options(inst, i, in_tprime[i], model.strict_pmhf);
    if (ctx.options[i].empty()) {
      note = "task " + inst.tasks[i].id + " admits no feasible placement";
      return false;
    }
    double mn = kInf;
    for (const auto& o : ctx.options[i]) mn = std::min(mn, o.max_wcet);
    ctx.min_maxwcet[i] = mn;
  }
  auto topo = inst.topological_order();
  if (!topo) {
    note = "dependency graph is not a DAG";
    return false;
  }
  ctx.topo = *topo;
  ctx.suffix_min_cost.assign(ctx.n + 1, 0);
  for (int p = ctx.n - 1; p >= 0; --p) {
    double mn = kInf;
    for (const auto& o : ctx.options[ctx.topo[p]]) mn = std::min(mn, o.cost);
    ctx.suffix_min_cost[p] = ctx.suffix_min_cost[p + 1] + mn;
  }
  ctx.dag_reach = dag_reachability(inst);
  ctx.wcrt.assign(ctx.n, std::vector<double>(ctx.n, -1.0));
  for (const auto& e : inst.edges) {
    int i = inst.task_index(e.from_task);
    int j = inst.task_index(e.to_task);
    if (i >= 0 && j >= 0 && i != j) ctx.wcrt[i][j] = e.wcrt_ms;
  }
  ctx.in_app.assign(ctx.n, 0);
  for (int i = 0; i < ctx.n; ++i)
    if (inst.tasks[i].application_id == model.focus_app) ctx.in_app[i] = 1;
  return true;
}

}  // namespace

SolveReport solve(const MilpModel& model, const SolveLimits& limits) {
  auto t0 = Clock::now();
  SolveReport rep;
  if (!model.instance) {
    rep.note = "model lacks its instance back-reference";
    return rep;
  }
  Ctx ctx;
  if (!init_ctx(ctx, model, limits, rep.note)) {
    rep.status = SolveStatus::Infeasible;
    rep.wall_s = std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
  }
  if (ctx.n == 0) {
    rep.status = SolveStatus::Optimal;
    rep.stage_objectives = {0.0, 0.0};
    rep.best = AllocationSolution{};
    rep.wall_s = std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
  }

  const bool cost_first = model.priority == Priority::CostFirst;
  StageGoal stage1;
  stage1.minimize_cost = cost_first;
  StageBest s1 = run_stage(ctx, stage1);
  rep.incumbents.push_back(s1.incumbents);
  rep.nodes = ctx.nodes;
  rep.wall_s = std::chrono::duration<double>(Clock::now() - t0).count();
  auto lift_limits = [&ctx] {
    // allow a short post-timeout pass that only attaches a schedule to the
    // incumbent mapping
    ctx.aborted = false;
    ctx.use_deadline = false;
    ctx.node_limit = -1;
  };
  if (ctx.aborted) {
    rep.status = SolveStatus::Timeout;
    if (s1.found) {
      rep.stage_objectives = {s1.value};
      OrderingResult ord = s1.ordering;
      if (!ord.found) {
        lift_limits();
        ord = min_makespan(ctx, s1.mapping, kInf, false);
      }
      if (ord.found) rep.best = extract_solution(ctx, s1.mapping, ord);
    }
    return rep;
  }
  if (!s1.found) {
    rep.status = SolveStatus::Infeasible;
    if (rep.note.empty()) rep.note = "no mapping satisfies memory and reliability constraints";
    return rep;
  }

  StageGoal stage2;
  stage2.minimize_cost = !cost_first;
  if (cost_first) {
    stage2.cost_bound = s1.value;  // epsilon 0: costs are rational inputs
  } else {
    stage2.latency_bound = s1.value * (1.0 + 1e-6);
  }
  StageBest s2 = run_stage(ctx, stage2);
  rep.incumbents.push_back(s2.incumbents);
  rep.nodes = ctx.nodes;
  rep.wall_s = std::chrono::duration<double>(Clock::now() - t0).count();
  if (ctx.aborted || !s2.found) {
    // stage 2 is a restriction of stage 1, so a finished stage 2 cannot be
    // empty; treat both cases as a timeout with the stage-1 incumbent.
    rep.status = SolveStatus::Timeout;
    rep.stage_objectives = {s1.value};
    lift_limits();
    OrderingResult ord = min_makespan(ctx, s1.mapping, kInf, false);
    if (ord.found) rep.best = extract_solution(ctx, s1.mapping, ord);
    return rep;
  }

  OrderingResult final_ord = s2.ordering;
  if (!final_ord.found) {
    // cost-minimizing stage: attach the best schedule for the chosen mapping
    double cap = stage2.latency_bound ? *stage2.latency_bound : kInf;
    final_ord = min_makespan(ctx, s2.mapping, cap + 1, false);
  }
  rep.status = SolveStatus::Optimal;
  rep.stage_objectives = {s1.value, s2.value};
  rep.best = extract_solution(ctx, s2.mapping, final_ord);
  rep.nodes = ctx.nodes;
  rep.wall_s = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

std::optional<Schedule> resolve_schedule(const ProblemInstance& instance, const Mapping& mapping,
                                         const ThetaOrdering& ordering) {
  int n = static_cast<int>(instance.tasks.size());
  if (static_cast<int>(mapping.size()) != n) return std::nullopt;
  Ctx ctx;
  ctx.inst = &instance;
  ctx.n = n;
  ctx.ne = static_cast<int>(instance.ecus.size());
  ctx.wcrt.assign(n, std::vector<double>(n, -1.0));
  for (const auto& e : instance.edges) {
    int i = instance.task_index(e.from_task);
    int j = instance.task_index(e.to_task);
    if (i >= 0 && j >= 0 && i != j) ctx.wcrt[i][j] = e.wcrt_ms;
  }
  ctx.in_app.assign(n, 1);

  Rel rel = dag_reachability(instance);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      bool zero = i < static_cast<int>(ordering.theta.size()) &&
                  j < static_cast<int>(ordering.theta[i].size()) && ordering.theta[i][j] == 0;
      if (zero) rel.set(j, i);  // theta_ij = 0: Tj precedes Ti
    }
  // transitive closure + contradiction check
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      if (rel.at(i, m))
        for (int j = 0; j < n; ++j)
          if (rel.at(m, j)) rel.set(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rel.at(i, j) && rel.at(j, i)) return std::nullopt;

  std::vector<Option> storage(n);
  std::vector<const Option*> chosen(n);
  for (int i = 0; i < n; ++i) {
    storage[i].replicas = mapping[i];
    for (auto& [k, h] : mapping[i]) {
      if (k < 0 || k >= ctx.ne || h < 1 || h > 4) return std::nullopt;
      storage[i].max_wcet = std::max(storage[i].max_wcet, instance.tasks[i].wcet_ms[k][h - 1]);
    }
    chosen[i] = &storage[i];
  }
  Starts st;
  if (!compute_starts(ctx, chosen, rel, st)) return std::nullopt;
  Schedule sched;
  sched.start_ms = st.s;
  sched.makespan = st.makespan_all;
  return sched;
}

}  // namespace aalloc
