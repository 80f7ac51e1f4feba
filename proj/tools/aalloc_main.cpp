#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "aalloc/ga.hpp"
#include "aalloc/instance_gen.hpp"
#include "aalloc/io.hpp"
#include "aalloc/milp.hpp"
#include "aalloc/solver.hpp"

namespace {

using namespace aalloc;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitInfeasible = 3;

double default_time_limit() {
  if (const char* env = std::getenv("AALLOC_TIME_LIMIT_S")) {
    try {
      double v = std::stod(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return 120.0;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

Priority parse_priority(const std::string& s) {
  return s == "latency" ? Priority::LatencyFirst : Priority::CostFirst;
}

GenScenario parse_scenario(const std::string& s) {
  if (s == "no-decomp") return GenScenario::NoDecomp;
  if (s == "d-on-c") return GenScenario::DOnC;
  if (s == "c-on-b") return GenScenario::COnB;
  return GenScenario::Mixed;
}

int run_solve(const std::string& path, const std::string& priority, const std::string& focus_app,
              double time_limit, bool strict_pmhf, const std::string& out) {
  ProblemInstance inst = load_instance(path);
  auto diags = validate_instance(inst);
  for (const auto& d : diags) {
    std::cerr << (d.warning ? "warning" : "error") << " [" << d.code << "] " << d.entity << ": "
              << d.message << "\n";
    if (!d.warning) return kExitError;
  }
  std::string app = focus_app.empty() && !inst.applications.empty() ? inst.applications.front()
                                                                    : focus_app;
  MilpModel model;
  try {
    model = build_model(inst, app, parse_priority(priority), strict_pmhf);
  } catch (const BuildInfeasibleError& e) {
    std::cerr << "infeasible: task " << e.task_id << ": " << e.what() << "\n";
    return kExitInfeasible;
  }
  SolveLimits limits;
  limits.time_limit_s = time_limit;
  SolveReport rep = solve(model, limits);
  if (rep.status == SolveStatus::Infeasible || !rep.best) {
    std::cerr << "infeasible: no allocation satisfies the constraints\n";
    return kExitInfeasible;
  }
  const AllocationSolution& sol = *rep.best;
  double lat = sol.makespan_per_app.count(app) ? sol.makespan_per_app.at(app) : 0.0;
  if (parse_priority(priority) == Priority::CostFirst)
    std::cout << "cost=" << fmt(sol.cost_total) << " latency=" << fmt(lat) << "\n";
  else
    std::cout << "latency=" << fmt(lat) << " cost=" << fmt(sol.cost_total) << "\n";
  std::cout << "status=" << (rep.status == SolveStatus::Optimal ? "optimal" : "timeout")
            << " nodes=" << rep.nodes << " wall_s=" << fmt(rep.wall_s) << "\n\n"
            << schedule_table(inst, sol);
  auto violations = validate_solution(inst, sol, strict_pmhf);
  for (const auto& v : violations)
    std::cerr << "violation [" << v.tag << "] " << v.message << "\n";
  if (!out.empty()) {
    nlohmann::json j = solution_to_json(inst, sol);
    j["status"] = rep.status == SolveStatus::Optimal ? "optimal" : "timeout";
    j["nodes"] = rep.nodes;
    j["wall_s"] = rep.wall_s;
    std::ofstream os(out);
    if (!os) {
      std::cerr << "cannot write " << out << "\n";
      return kExitError;
    }
    os << j.dump(2) << "\n";
  }
  if (!violations.empty()) return kExitError;
  return rep.status == SolveStatus::Optimal ? kExitOk : kExitTimeout;
}

int run_export_lp(const std::string& path, const std::string& priority,
                  const std::string& out_dir) {
  ProblemInstance inst = load_instance(path);
  std::string app = inst.applications.empty() ? "" : inst.applications.front();
  MilpModel model = build_model(inst, app, parse_priority(priority));
  export_lp(model, out_dir + "/stage1.lp");
  export_lp_stage2(model, out_dir + "/stage2.lp");
  std::cout << "wrote " << out_dir << "/stage1.lp and " << out_dir << "/stage2.lp\n";
  return kExitOk;
}

int run_generate(const GenConfig& cfg, const std::string& out) {
  ProblemInstance inst = generate_instance(cfg);
  save_instance(inst, out);
  std::cout << "wrote " << out << " (" << inst.tasks.size() << " tasks, " << inst.ecus.size()
            << " ecus, " << inst.edges.size() << " edges)\n";
  return kExitOk;
}

int run_bench(const std::string& range, const std::string& scenario, int seeds, int n_ecus,
              double time_limit, const std::string& out) {
  auto dots = range.find("..");
  if (dots == std::string::npos) {
    std::cerr << "--tasks-range must look like A..B\n";
    return kExitError;
  }
  int lo = std::stoi(range.substr(0, dots));
  int hi = std::stoi(range.substr(dots + 2));
  if (lo < 1 || hi < lo) {
    std::cerr << "empty task range\n";
    return kExitError;
  }
  std::ofstream os(out);
  if (!os) {
    std::cerr << "cannot write " << out << "\n";
    return kExitError;
  }
  os << "n_tasks,scenario,seed,solve_ms,nodes\n";
  for (int n = lo; n <= hi; ++n) {
    for (int s = 0; s < seeds; ++s) {
      GenConfig cfg;
      cfg.n_tasks = n;
      cfg.n_ecus = n_ecus;
      cfg.seed = 1000ull * n + s;
      cfg.scenario = parse_scenario(scenario);
      ProblemInstance inst = generate_instance(cfg);
      MilpModel model = build_model(inst, "APP1", Priority::CostFirst);
      SolveLimits limits;
      limits.time_limit_s = time_limit;
      SolveReport rep = solve(model, limits);
      os << n << "," << scenario << "," << s << "," << rep.wall_s * 1000.0 << "," << rep.nodes
         << "\n";
    }
  }
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int run_ga(const std::string& path, const GaParams& params, const std::string& out) {
  ProblemInstance inst = load_instance(path);
  GaResult res = evolve(inst, params);
  std::cout << "ga_best=" << fmt(res.best_fitness) << "\n";
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) {
      std::cerr << "cannot write " << out << "\n";
      return kExitError;
    }
    os << "generation,best,mean\n";
    for (size_t g = 0; g < res.history.size(); ++g)
      os << g << "," << res.history[g].best << "," << res.history[g].mean << "\n";
  }
  return kExitOk;
}

int run_compare(const std::string& path, const GaParams& params, double time_limit) {
  ProblemInstance inst = load_instance(path);
  std::string app = inst.applications.empty() ? "" : inst.applications.front();
  MilpModel model = build_model(inst, app, Priority::CostFirst);
  SolveLimits limits;
  limits.time_limit_s = time_limit;
  SolveReport rep = solve(model, limits);
  if (rep.status != SolveStatus::Optimal || !rep.best) {
    std::cerr << "exact solve did not reach optimality\n";
    return rep.status == SolveStatus::Timeout ? kExitTimeout : kExitInfeasible;
  }
  GaResult ga = evolve(inst, params);
  double ilp = rep.best->cost_total;
  double gap = ilp > 0 ? (ga.best_fitness - ilp) / ilp : 0.0;
  std::cout << "ilp_cost=" << fmt(ilp) << " ga_best=" << fmt(ga.best_fitness)
            << " gap=" << fmt(gap) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ASIL-decomposition-aware task-to-ECU allocation"};
  app.require_subcommand(1);

  std::string instance_path, priority = "cost", focus_app, out, out_dir = ".";
  double time_limit = default_time_limit();
  bool strict_pmhf = false;

  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance exactly");
  solve_cmd->add_option("instance", instance_path)->required();
  solve_cmd->add_option("--priority", priority)->check(CLI::IsMember({"cost", "latency"}));
  solve_cmd->add_option("--focus-app", focus_app);
  solve_cmd->add_option("--time-limit", time_limit);
  solve_cmd->add_option("--seed", [](auto&&) { return true; },
                        "Accepted for interface symmetry; the exact solver is deterministic");
  solve_cmd->add_flag("--strict-pmhf", strict_pmhf);
  solve_cmd->add_option("--out", out);

  auto* lp_cmd = app.add_subcommand("export-lp", "Write stage-1/stage-2 LP files");
  lp_cmd->add_option("instance", instance_path)->required();
  lp_cmd->add_option("--priority", priority)->check(CLI::IsMember({"cost", "latency"}));
  lp_cmd->add_option("--out-dir", out_dir);

  GenConfig gen_cfg;
  std::string scenario = "mixed";
  auto* gen_cmd = app.add_subcommand("generate", "Generate a random instance");
  gen_cmd->add_option("--tasks", gen_cfg.n_tasks)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--ecus", gen_cfg.n_ecus)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_cfg.seed);
  gen_cmd->add_option("--scenario", scenario)
      ->check(CLI::IsMember({"no-decomp", "d-on-c", "c-on-b", "mixed"}));
  gen_cmd->add_option("--edge-prob", gen_cfg.edge_prob);
  gen_cmd->add_flag("--binding-memory", gen_cfg.binding_memory);
  gen_cmd->add_option("--asil-c-fraction", gen_cfg.asil_c_fraction);
  gen_cmd->add_flag("--decompose-all", gen_cfg.decompose_all);
  gen_cmd->add_option("--out", out)->required();

  std::string tasks_range = "3..6";
  int bench_seeds = 20, bench_ecus = 4;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark generated instances");
  bench_cmd->add_option("--tasks-range", tasks_range);
  bench_cmd->add_option("--scenario", scenario)
      ->check(CLI::IsMember({"no-decomp", "d-on-c", "c-on-b", "mixed"}));
  bench_cmd->add_option("--seeds", bench_seeds)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--ecus", bench_ecus)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--time-limit", time_limit);
  bench_cmd->add_option("--out", out)->required();

  GaParams ga_params;
  auto* ga_cmd = app.add_subcommand("ga", "Run the genetic-algorithm baseline");
  ga_cmd->add_option("instance", instance_path)->required();
  ga_cmd->add_option("--population", ga_params.population)->check(CLI::PositiveNumber);
  ga_cmd->add_option("--generations", ga_params.generations);
  ga_cmd->add_option("--tournament", ga_params.tournament)->check(CLI::PositiveNumber);
  ga_cmd->add_option("--crossover", ga_params.crossover_prob);
  ga_cmd->add_option("--mutation", ga_params.mutation_prob);
  ga_cmd->add_option("--penalty", ga_params.penalty_weight);
  ga_cmd->add_option("--seed", ga_params.seed);
  ga_cmd->add_flag("--enforce-memory", ga_params.enforce_memory);
  ga_cmd->add_flag("--enforce-localization", ga_params.enforce_localization);
  ga_cmd->add_option("--out", out);

  auto* cmp_cmd = app.add_subcommand("compare", "Exact solver vs GA cost gap");
  cmp_cmd->add_option("instance", instance_path)->required();
  cmp_cmd->add_option("--seed", ga_params.seed);
  cmp_cmd->add_option("--time-limit", time_limit);
  cmp_cmd->add_flag("--enforce-memory", ga_params.enforce_memory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (solve_cmd->parsed())
      return run_solve(instance_path, priority, focus_app, time_limit, strict_pmhf, out);
    if (lp_cmd->parsed()) return run_export_lp(instance_path, priority, out_dir);
    if (gen_cmd->parsed()) {
      gen_cfg.scenario = parse_scenario(scenario);
      return run_generate(gen_cfg, out);
    }
    if (bench_cmd->parsed())
      return run_bench(tasks_range, scenario, bench_seeds, bench_ecus, time_limit, out);
    if (ga_cmd->parsed()) return run_ga(instance_path, ga_params, out);
    if (cmp_cmd->parsed()) return run_compare(instance_path, ga_params, time_limit);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const BuildInfeasibleError& e) {
    std::cerr << "infeasible: task " << e.task_id << ": " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
