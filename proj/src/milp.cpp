#include "aalloc/milp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "aalloc/reliability.hpp"

namespace aalloc {

namespace {

std::string sanitize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}

std::string x_name(const Task& t, const Ecu& e, int h) {
  return "x_" + sanitize(t.id) + "_" + sanitize(e.id) + "_h" + std::to_string(h);
}
std::string a_name(const Task& t, int h) {
  return "a_" + sanitize(t.id) + "_h" + std::to_string(h);
}
std::string tau_name(const Task& t, const Ecu& e) {
  return "tau_" + sanitize(t.id) + "_" + sanitize(e.id);
}
std::string th_name(const Task& ti, const Task& tj) {
  return "th_" + sanitize(ti.id) + "_" + sanitize(tj.id);
}

constexpr double kTimeEps = 1e-6;

}  // namespace

int MilpModel::var(const std::string& name) const {
  auto it = var_index.find(name);
  if (it == var_index.end()) throw std::out_of_range("no such variable: " + name);
  return it->second;
}

MilpModel build_model(const ProblemInstance& instance, const std::string& focus_app,
                      Priority priority, bool strict_pmhf) {
  MilpModel m;
  m.instance = &instance;
  m.focus_app = focus_app;
  m.priority = priority;
  m.strict_pmhf = strict_pmhf;
  m.tprime = compute_decomposition_set(instance);

  const size_t n = instance.tasks.size();
  const size_t ne = instance.ecus.size();
  std::vector<char> in_tprime(n, 0);
  for (int i : m.tprime) in_tprime[i] = 1;

  // Build-time infeasibility screen.
  for (size_t i = 0; i < n; ++i) {
    const Task& t = instance.tasks[i];
    if (in_tprime[i]) {
      if (filter_compatible(enumerate_schemes(t.asil), instance.ecus).empty())
        throw BuildInfeasibleError(t.id, "task " + t.id +
                                             ": no compatible decomposition scheme on this platform");
    } else {
      bool any = false;
      for (size_t k = 0; k < ne; ++k)
        if (t.localization[k] && t.asil <= instance.ecus[k].asil) any = true;
      if (!any)
        throw BuildInfeasibleError(t.id, "task " + t.id + ": no ASIL-compatible localized ECU");
    }
  }

  auto add_var = [&](std::string name, MilpVariable::Kind kind, double lo, double hi) {
    m.var_index.emplace(name, static_cast<int>(m.variables.size()));
    m.variables.push_back({std::move(name), kind, lo, hi});
  };
  auto levels_of = [&](size_t i) {
    std::vector<int> hs;
    if (in_tprime[i]) {
      hs = {1, 2, 3, 4};
    } else {
      hs = {instance.tasks[i].asil.value()};
    }
    return hs;
  };

  // Variables. x only where loc=1 (the localization constraint is enforced by
  // not creating the variable).
  for (size_t i = 0; i < n; ++i) {
    const Task& t = instance.tasks[i];
    for (size_t k = 0; k < ne; ++k) {
      if (!t.localization[k]) continue;
      for (int h : levels_of(i)) add_var(x_name(t, instance.ecus[k], h), MilpVariable::Kind::Binary, 0, 1);
    }
  }
  for (int i : m.tprime)
    for (int h = 1; h <= 4; ++h)
      add_var(a_name(instance.tasks[i], h), MilpVariable::Kind::Integer, 0, 4);
  const double horizon_hint = 1e30;
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < ne; ++k)
      add_var(tau_name(instance.tasks[i], instance.ecus[k]), MilpVariable::Kind::Continuous, 0,
              horizon_hint);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j) add_var(th_name(instance.tasks[i], instance.tasks[j]), MilpVariable::Kind::Binary, 0, 1);
  add_var("phi", MilpVariable::Kind::Continuous, 0, horizon_hint);

  // Big-M: no feasible schedule is cut off by this bound.
  double big_m = 1.0;
  for (size_t i = 0; i < n; ++i) {
    double mx = 0;
    for (size_t k = 0; k < ne; ++k)
      if (instance.tasks[i].localization[k])
        for (int h = 1; h <= 4; ++h) mx = std::max(mx, instance.tasks[i].wcet_ms[k][h - 1]);
    big_m += mx;
  }
  for (const auto& e : instance.edges) big_m += e.wcrt_ms;
  m.big_m = big_m;

  auto add = [&](LinearConstraint c) { m.constraints.push_back(std::move(c)); };
  auto xv = [&](size_t i, size_t k, int h) -> int {
    auto it = m.var_index.find(x_name(instance.tasks[i], instance.ecus[k], h));
    return it == m.var_index.end() ? -1 : it->second;
  };

  // eq8: each non-decomposed task on exactly one ECU.
  for (size_t i = 0; i < n; ++i) {
    if (in_tprime[i]) continue;
    LinearConstraint c;
    c.sense = LinearConstraint::Sense::EQ;
    c.rhs = 1;
    c.tag = "eq8";
    int h = instance.tasks[i].asil.value();
    for (size_t k = 0; k < ne; ++k)
      if (int v = xv(i, k, h); v >= 0) c.terms.push_back({v, 1});
    add(std::move(c));
  }
  // eq9 / eq10 / eq11 for decomposed tasks.
  for (int i : m.tprime) {
    const Task& t = instance.tasks[i];
    {
      LinearConstraint c;
      c.sense = LinearConstraint::Sense::EQ;
      c.rhs = t.asil.value();
      c.tag = "eq9";
      for (int h = 1; h <= 4; ++h) c.terms.push_back({m.var(a_name(t, h)), double(h)});
      add(std::move(c));
    }
    for (int h = 1; h <= 4; ++h) {
      LinearConstraint c;
      c.sense = LinearConstraint::Sense::EQ;
      c.rhs = 0;
      c.tag = "eq10";
      for (size_t k = 0; k < ne; ++k)
        if (int v = xv(i, k, h); v >= 0) c.terms.push_back({v, 1});
      c.terms.push_back({m.var(a_name(t, h)), -1});
      add(std::move(c));
    }
    for (size_t k = 0; k < ne; ++k) {
      if (!t.localization[k]) continue;
      LinearConstraint c;
      c.sense = LinearConstraint::Sense::LE;
      c.rhs = 1;
      c.tag = "eq11";
      for (int h = 1; h <= 4; ++h)
        if (int v = xv(i, k, h); v >= 0) c.terms.push_back({v, 1});
      add(std::move(c));
    }
  }
  // eq13: memory capacity per ECU.
  for (size_t k = 0; k < ne; ++k) {
    LinearConstraint c;
    c.sense = LinearConstraint::Sense::LE;
    c.rhs = instance.ecus[k].memory_mb;
    c.tag = "eq13";
    for (size_t i = 0; i < n; ++i)
      for (int h : levels_of(i))
        if (int v = xv(i, k, h); v >= 0)
          c.terms.push_back({v, double(instance.tasks[i].memory_mb[h - 1])});
    if (!c.terms.empty()) add(std::move(c));
  }
  // eq14 / eq15: ASIL compatibility; emitted where they bind (fixing x to 0).
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < ne; ++k) {
      for (int h : levels_of(i)) {
        int v = xv(i, k, h);
        if (v < 0) continue;
        int lam_e = instance.ecus[k].asil.value();
        if (h <= lam_e) continue;
        LinearConstraint c;
        c.sense = LinearConstraint::Sense::LE;
        c.rhs = lam_e;
        c.tag = in_tprime[i] ? "eq15" : "eq14";
        c.terms.push_back({v, double(h)});
        add(std::move(c));
      }
    }
  }
  // eq16 / eq17 precedence, Big-M linearized per placement-variable pair:
  // tau_j,m >= tau_i,k + wcet + [k != m] wcrt - M (2 - x_i,k,h1 - x_j,m,h2).
  for (const auto& e : instance.edges) {
    int i = instance.task_index(e.from_task);
    int j = instance.task_index(e.to_task);
    if (i < 0 || j < 0 || i == j) continue;
    for (size_t k = 0; k < ne; ++k) {
      for (int h1 : levels_of(i)) {
        int v1 = xv(i, k, h1);
        if (v1 < 0) continue;
        for (size_t mm = 0; mm < ne; ++mm) {
          for (int h2 : levels_of(j)) {
            int v2 = xv(j, mm, h2);
            if (v2 < 0) continue;
            double w = instance.tasks[i].wcet_ms[k][h1 - 1] + (k != mm ? e.wcrt_ms : 0.0);
            LinearConstraint c;
            c.sense = LinearConstraint::Sense::LE;
            c.rhs = 2 * big_m - w;
            c.tag = (k == mm) ? "eq16" : "eq17";
            c.terms.push_back({m.var(tau_name(instance.tasks[i], instance.ecus[k])), 1});
            c.terms.push_back({m.var(tau_name(instance.tasks[j], instance.ecus[mm])), -1});
            c.terms.push_back({v1, big_m});
            c.terms.push_back({v2, big_m});
            add(std::move(c));
          }
        }
      }
    }
  }
  // eq19 / eq20: disjunctive non-overlap for independent pairs.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j || instance.edge_between(int(i), int(j)) >= 0) continue;
      int th = m.var(th_name(instance.tasks[i], instance.tasks[j]));
      for (size_t k = 0; k < ne; ++k) {
        LinearConstraint base;
        base.terms.push_back({m.var(tau_name(instance.tasks[i], instance.ecus[k])), 1});
        base.terms.push_back({m.var(tau_name(instance.tasks[j], instance.ecus[k])), -1});
        for (int h : levels_of(j))
          if (int v = xv(j, k, h); v >= 0)
            base.terms.push_back({v, -instance.tasks[j].wcet_ms[k][h - 1]});
        {
          LinearConstraint c = base;
          c.terms.push_back({th, big_m});
          c.sense = LinearConstraint::Sense::GE;
          c.rhs = 0;
          c.tag = "eq19";
          add(std::move(c));
        }
        {
          LinearConstraint c = base;
          c.terms.push_back({th, big_m});
          c.sense = LinearConstraint::Sense::LE;
          c.rhs = big_m;
          c.tag = "eq20";
          add(std::move(c));
        }
      }
    }
  }
  // eq21: at most one of the two orderings is relaxed for co-locatable pairs.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      int th_ij = m.var(th_name(instance.tasks[i], instance.tasks[j]));
      int th_ji = m.var(th_name(instance.tasks[j], instance.tasks[i]));
      for (size_t k = 0; k < ne; ++k) {
        for (int h1 : levels_of(i)) {
          int v1 = xv(i, k, h1);
          if (v1 < 0) continue;
          for (int h2 : levels_of(j)) {
            int v2 = xv(j, k, h2);
            if (v2 < 0) continue;
            LinearConstraint c;
            c.sense = LinearConstraint::Sense::LE;
            c.rhs = 3;
            c.tag = "eq21";
            c.terms = {{v1, 1.0}, {v2, 1.0}, {th_ij, 1.0}, {th_ji, 1.0}};
            add(std::move(c));
          }
        }
      }
    }
  }
  // eq22: dependent pairs keep their dependency ordering.
  for (const auto& e : instance.edges) {
    int i = instance.task_index(e.from_task);
    int j = instance.task_index(e.to_task);
    if (i < 0 || j < 0 || i == j) continue;
    LinearConstraint c;
    c.sense = LinearConstraint::Sense::EQ;
    c.rhs = 1;
    c.tag = "eq22";
    c.terms.push_back({m.var(th_name(instance.tasks[i], instance.tasks[j])), 1});
    add(std::move(c));
  }
  // eq23: application makespan.
  int phi = m.var("phi");
  for (size_t i = 0; i < n; ++i) {
    if (instance.tasks[i].application_id != focus_app) continue;
    for (size_t k = 0; k < ne; ++k) {
      LinearConstraint c;
      c.sense = LinearConstraint::Sense::LE;
      c.rhs = 0;
      c.tag = "eq23";
      c.terms.push_back({m.var(tau_name(instance.tasks[i], instance.ecus[k])), 1});
      for (int h : levels_of(i))
        if (int v = xv(i, k, h); v >= 0)
          c.terms.push_back({v, instance.tasks[i].wcet_ms[k][h - 1]});
      c.terms.push_back({phi, -1});
      add(std::move(c));
    }
  }
  // eq24: log-linearized PMHF for decomposed tasks (all safety tasks in
  // strict mode).
  for (size_t i = 0; i < n; ++i) {
    bool covered = in_tprime[i] || (strict_pmhf && pmhf_target(instance.tasks[i].asil));
    if (!covered) continue;
    auto budget = log_pof_budget(instance.tasks[i].asil, instance.lifetime_hours);
    if (!budget) continue;
    LinearConstraint c;
    c.sense = LinearConstraint::Sense::LE;
    c.rhs = *budget;
    c.tag = "eq24";
    for (size_t k = 0; k < ne; ++k) {
      double coef = log_pof_coefficient(instance.ecus[k].failure_rate_per_hour,
                                        instance.lifetime_hours);
      for (int h : levels_of(i))
        if (int v = xv(i, k, h); v >= 0) c.terms.push_back({v, coef});
    }
    if (!c.terms.empty()) add(std::move(c));
  }

  // Objectives, ordered by priority.
  LinearExpr cost;
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < ne; ++k)
      for (int h : levels_of(i))
        if (int v = xv(i, k, h); v >= 0)
          cost.terms.push_back({v, instance.tasks[i].dev_cost[k][h - 1]});
  LinearExpr latency;
  latency.terms.push_back({phi, 1});
  if (priority == Priority::CostFirst) {
    m.objectives = {std::move(cost), std::move(latency)};
  } else {
    m.objectives = {std::move(latency), std::move(cost)};
  }
  return m;
}

namespace {

void write_expr(std::ostream& os, const std::vector<std::pair<int, double>>& terms,
                const std::vector<MilpVariable>& vars) {
  bool first = true;
  for (const auto& [v, coef] : terms) {
    if (coef == 0) continue;
    if (coef < 0) {
      os << (first ? "- " : " - ");
    } else if (!first) {
      os << " + ";
    }
    double a = std::fabs(coef);
    if (a != 1.0) os << a << " ";
    os << vars[v].name;
    first = false;
  }
  if (first) os << "0 phi";  // empty expression guard, never expected
}

void write_lp_body(std::ostream& os, const MilpModel& model, const LinearExpr& objective,
                   const std::optional<std::pair<const LinearExpr*, std::string>>& extra_bound) {
  os << "Minimize\n obj: ";
  write_expr(os, objective.terms, model.variables);
  os << "\nSubject To\n";
  int idx = 0;
  std::string last_tag;
  for (const auto& c : model.constraints) {
    if (c.tag != last_tag) {
      os << "\\ " << c.tag << "\n";
      last_tag = c.tag;
    }
    os << " " << c.tag << "_" << idx++ << ": ";
    write_expr(os, c.terms, model.variables);
    switch (c.sense) {
      case LinearConstraint::Sense::LE: os << " <= "; break;
      case LinearConstraint::Sense::EQ: os << " = "; break;
      case LinearConstraint::Sense::GE: os << " >= "; break;
    }
    os << c.rhs << "\n";
  }
  if (extra_bound) {
    os << "\\ lexicographic stage coupling\n lex_bound: ";
    write_expr(os, extra_bound->first->terms, model.variables);
    os << " <= " << extra_bound->second << "\n";
  }
  std::vector<const MilpVariable*> generals, binaries;
  for (const auto& v : model.variables) {
    if (v.kind == MilpVariable::Kind::Integer) generals.push_back(&v);
    if (v.kind == MilpVariable::Kind::Binary) binaries.push_back(&v);
  }
  if (!generals.empty()) {
    os << "Bounds\n";
    for (const auto* v : generals) os << " " << v->lo << " <= " << v->name << " <= " << v->hi << "\n";
    os << "General\n";
    for (const auto* v : generals) os << " " << v->name << "\n";
  }
  if (!binaries.empty()) {
    os << "Binary\n";
    for (const auto* v : binaries) os << " " << v->name << "\n";
  }
  os << "End\n";
}

}  // namespace

void export_lp(const MilpModel& model, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "\\ stage-1 model (" <<
      (model.priority == Priority::CostFirst ? "development cost" : "application latency")
     << " objective)\n";
  write_lp_body(os, model, model.objectives[0], std::nullopt);
  if (!os) throw std::runtime_error("write failed: " + path);
}

void export_lp_stage2(const MilpModel& model, const std::string& path,
                      std::optional<double> stage1_bound) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "\\ stage-2 model (secondary objective; primary bounded by the stage-1 optimum)\n";
  std::string rhs = stage1_bound ? std::to_string(*stage1_bound) : std::string("{{STAGE1_BOUND}}");
  std::optional<std::pair<const LinearExpr*, std::string>> bound{{&model.objectives[0], rhs}};
  write_lp_body(os, model, model.objectives[1], bound);
  if (!os) throw std::runtime_error("write failed: " + path);
}

std::vector<Violation> validate_solution(const ProblemInstance& instance,
                                         const AllocationSolution& solution, bool strict_pmhf) {
  std::vector<Violation> out;
  auto bad = [&](std::string tag, std::string msg) {
    out.push_back({std::move(tag), std::move(msg)});
  };

  const size_t n = instance.tasks.size();
  const size_t ne = instance.ecus.size();
  auto tprime = compute_decomposition_set(instance);
  std::vector<char> in_tprime(n, 0);
  for (int i : tprime) in_tprime[i] = 1;

  struct P {
    int task, ecu, h;
    double start, wcet;
  };
  std::vector<P> ps;
  for (const auto& pl : solution.placements) {
    int i = instance.task_index(pl.task_id);
    int k = instance.ecu_index(pl.ecu_id);
    if (i < 0 || k < 0) {
      bad("unknown-entity", "placement references unknown id " + pl.task_id + "/" + pl.ecu_id);
      continue;
    }
    if (pl.asil_value < 1 || pl.asil_value > 4) {
      bad("eq9", "placement of " + pl.task_id + " carries ASIL value outside 1..4");
      continue;
    }
    if (!instance.tasks[i].localization[k])
      bad("eq12", pl.task_id + " placed on non-localized ECU " + pl.ecu_id);
    if (pl.asil_value > instance.ecus[k].asil.value())
      bad(in_tprime[i] ? "eq15" : "eq14",
          pl.task_id + " at ASIL " + Asil::from_value(pl.asil_value).name() +
              " exceeds capability of " + pl.ecu_id);
    double wcet = instance.tasks[i].wcet_ms[k][pl.asil_value - 1];
    ps.push_back({i, k, pl.asil_value, pl.start_ms, wcet});
  }

  // Per-task structure: eq8 for plain tasks, eq9/eq10/eq11 for decomposed.
  std::vector<std::vector<const P*>> by_task(n);
  for (const auto& p : ps) by_task[p.task].push_back(&p);
  for (size_t i = 0; i < n; ++i) {
    const Task& t = instance.tasks[i];
    if (!in_tprime[i]) {
      if (by_task[i].size() != 1)
        bad("eq8", t.id + " must have exactly one placement, has " +
                       std::to_string(by_task[i].size()));
      else if (by_task[i][0]->h != t.asil.value())
        bad("eq8", t.id + " must run at its own ASIL " + t.asil.name());
      continue;
    }
    auto it = solution.scheme_per_task.find(t.id);
    if (it == solution.scheme_per_task.end()) {
      bad("eq9", t.id + " lacks a decomposition scheme");
      continue;
    }
    if (it->second.weighted_sum() != t.asil.value())
      bad("eq9", t.id + " scheme weights sum to " + std::to_string(it->second.weighted_sum()) +
                     ", expected " + std::to_string(t.asil.value()));
    std::array<int, 4> count{};
    std::set<int> ecus_used;
    for (const P* p : by_task[i]) {
      ++count[p->h - 1];
      if (!ecus_used.insert(p->ecu).second)
        bad("eq11", t.id + " has two replicas on " + instance.ecus[p->ecu].id);
    }
    if (count != it->second.alpha)
      bad("eq10", t.id + " placements do not match the decomposition scheme");
  }

  // eq13: memory.
  for (size_t k = 0; k < ne; ++k) {
    long total = 0;
    for (const auto& p : ps)
      if (p.ecu == static_cast<int>(k)) total += instance.tasks[p.task].memory_mb[p.h - 1];
    if (total > instance.ecus[k].memory_mb)
      bad("eq13", instance.ecus[k].id + " memory exceeded: " + std::to_string(total) + " > " +
                      std::to_string(instance.ecus[k].memory_mb) + " MB");
  }

  // eq4: product-form reliability per covered task.
  for (size_t i = 0; i < n; ++i) {
    bool covered = in_tprime[i] || strict_pmhf;
    if (!covered || by_task[i].empty()) continue;
    std::vector<double> rates;
    for (const P* p : by_task[i]) rates.push_back(instance.ecus[p->ecu].failure_rate_per_hour);
    auto res = check_pmhf(instance.tasks[i].asil, rates, instance.lifetime_hours);
    if (!res.ok)
      bad("eq4", instance.tasks[i].id + " violates its PMHF budget on the chosen ECUs");
  }

  // eq16/eq17: every replica of a predecessor finishes (plus WCRT when
  // remote) before any replica of the successor starts.
  for (const auto& e : instance.edges) {
    int i = instance.task_index(e.from_task);
    int j = instance.task_index(e.to_task);
    if (i < 0 || j < 0) continue;
    for (const P* pi : by_task[i]) {
      for (const P* pj : by_task[j]) {
        double gap = pi->start + pi->wcet + (pi->ecu != pj->ecu ? e.wcrt_ms : 0.0);
        if (pj->start + kTimeEps < gap)
          bad(pi->ecu == pj->ecu ? "eq16" : "eq17",
              e.from_task + "->" + e.to_task + ": successor starts at " +
                  std::to_string(pj->start) + " before " + std::to_string(gap));
      }
    }
  }

  // eq18: no same-ECU interval overlap.
  for (size_t k = 0; k < ne; ++k) {
    std::vector<const P*> on;
    for (const auto& p : ps)
      if (p.ecu == static_cast<int>(k)) on.push_back(&p);
    std::sort(on.begin(), on.end(), [](const P* a, const P* b) { return a->start < b->start; });
    for (size_t a = 0; a + 1 < on.size(); ++a) {
      if (on[a]->start + on[a]->wcet > on[a + 1]->start + kTimeEps)
        bad("eq18", instance.tasks[on[a]->task].id + " and " + instance.tasks[on[a + 1]->task].id +
                        " overlap on " + instance.ecus[k].id);
    }
  }

  // eq23 / eq6: reported aggregates match the placements.
  for (const auto& [app, reported] : solution.makespan_per_app) {
    double mk = 0;
    for (const auto& p : ps)
      if (instance.tasks[p.task].application_id == app) mk = std::max(mk, p.start + p.wcet);
    if (std::fabs(mk - reported) > 1e-6)
      bad("eq23", "reported makespan " + std::to_string(reported) + " for " + app +
                      " differs from computed " + std::to_string(mk));
  }
  double cost = 0;
  for (const auto& p : ps) cost += instance.tasks[p.task].dev_cost[p.ecu][p.h - 1];
  if (std::fabs(cost - solution.cost_total) > 1e-6)
    bad("eq6", "reported cost " + std::to_string(solution.cost_total) +
                   " differs from computed " + std::to_string(cost));
  return out;
}

}  // namespace aalloc
