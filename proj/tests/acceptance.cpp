// Acceptance harness: one pass/fail line per criterion, nonzero exit when any
// criterion fails. argv[1] is the case-study instance file.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "aalloc/decomposition.hpp"
#include "aalloc/ga.hpp"
#include "aalloc/instance_gen.hpp"
#include "aalloc/io.hpp"
#include "aalloc/milp.hpp"
#include "aalloc/oracle.hpp"
#include "aalloc/reliability.hpp"
#include "aalloc/solver.hpp"

using namespace aalloc;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Collected {
  const ProblemInstance* owner = nullptr;
  ProblemInstance storage;
  AllocationSolution solution;
};

std::vector<Collected> collected;  // solver outputs for the schedule-validity sweep

void collect(const ProblemInstance& inst, const AllocationSolution& sol) {
  Collected c;
  c.storage = inst;
  c.solution = sol;
  collected.push_back(std::move(c));
}

}  // namespace

int main(int argc, char** argv) {
  std::string case_path = argc > 1 ? argv[1] : "data/case_study.json";
  ProblemInstance case_study = load_instance(case_path);

  // --- Criterion 1: case-study development-cost optimum -------------------
  SolveReport cost_first;
  {
    auto t0 = std::chrono::steady_clock::now();
    MilpModel m = build_model(case_study, "APP1", Priority::CostFirst);
    cost_first = solve(m);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = cost_first.status == SolveStatus::Optimal && cost_first.best &&
              cost_first.best->cost_total == 98.0 && wall <= 120.0;
    if (cost_first.best) collect(case_study, *cost_first.best);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "case-study cost-first optimum = %.0f (expected 98), %.2f s",
                  cost_first.best ? cost_first.best->cost_total : -1.0, wall);
    report(1, ok, buf);
  }

  // --- Criterion 2: latency priority (conditional on the graph figure) ----
  SolveReport lat_first;
  {
    MilpModel m = build_model(case_study, "APP1", Priority::LatencyFirst);
    lat_first = solve(m);
    if (lat_first.best) collect(case_study, *lat_first.best);
    double lat = lat_first.best ? lat_first.best->makespan_per_app.at("APP1") : -1;
    double cost = lat_first.best ? lat_first.best->cost_total : -1;
    double stage2_lat =
        cost_first.best ? cost_first.best->makespan_per_app.at("APP1") : -1;
    bool exact = lat == 68.0 && cost == 109.0 && stage2_lat == 74.0;
    if (exact) {
      report(2, true, "latency-first = 68 ms / cost 109, cost-first stage-2 latency = 74 ms");
    } else {
      // The published graph figure is not reproducible from the text, so the
      // criterion falls back to ordering checks plus exhaustive equivalence
      // on the full six-task instance.
      bool order_ok = lat_first.status == SolveStatus::Optimal && cost_first.best &&
                      lat <= stage2_lat && cost >= 98.0;
      bool oracle_ok = true;
      for (Priority pr : {Priority::CostFirst, Priority::LatencyFirst}) {
        OracleResult oracle = brute_force_optimum(case_study, pr, "APP1", 1e9);
        const SolveReport& rep = pr == Priority::CostFirst ? cost_first : lat_first;
        oracle_ok = oracle_ok && oracle.status == SolveStatus::Optimal &&
                    std::fabs(oracle.primary - rep.stage_objectives[0]) < 1e-6 &&
                    std::fabs(oracle.secondary - rep.stage_objectives[1]) < 1e-6;
      }
      char buf[220];
      std::snprintf(buf, sizeof(buf),
                    "figure graph unavailable; fallback: latency-first %.0f ms <= cost-first "
                    "%.0f ms, cost %.0f >= 98, six-task oracle equivalence %s",
                    lat, stage2_lat, cost, oracle_ok ? "holds" : "FAILS");
      report(2, order_ok && oracle_ok, buf);
    }
  }

  // --- Criterion 3: oracle equivalence on 200 seeded instances ------------
  {
    auto t0 = std::chrono::steady_clock::now();
    int checked = 0, agreed = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      GenConfig cfg;
      cfg.n_tasks = 2 + static_cast<int>(seed % 4);  // 2..5
      cfg.n_ecus = 2 + static_cast<int>(seed % 2);   // 2..3
      cfg.seed = seed;
      cfg.scenario = seed % 3 == 0   ? GenScenario::COnB
                     : seed % 3 == 1 ? GenScenario::Mixed
                                     : GenScenario::NoDecomp;
      for (bool force : {false, true}) {
        cfg.decompose_all = force;
        ProblemInstance inst = generate_instance(cfg);
        for (Priority pr : {Priority::CostFirst, Priority::LatencyFirst}) {
          MilpModel m = build_model(inst, "APP1", pr);
          SolveReport rep = solve(m);
          OracleResult oracle = brute_force_optimum(inst, pr, "APP1", 1e8);
          ++checked;
          bool same = rep.status == oracle.status;
          if (same && rep.status == SolveStatus::Optimal) {
            same = std::fabs(rep.stage_objectives[0] - oracle.primary) < 1e-9 &&
                   std::fabs(rep.stage_objectives[1] - oracle.secondary) < 1e-9;
            collect(inst, *rep.best);
          }
          if (same) ++agreed;
        }
      }
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "solver = brute force on %d/%d instance solves (200 instances, both "
                  "priorities), %.1f s",
                  agreed, checked, wall);
    report(3, agreed == checked && wall <= 600.0, buf);
  }

  // --- Criterion 4: decomposition enumeration ------------------------------
  {
    bool ok = true;
    auto schemes_d = enumerate_schemes(Asil::d());
    std::set<std::array<int, 4>> got;
    for (const auto& s : schemes_d) got.insert(s.alpha);
    std::set<std::array<int, 4>> want = {
        {0, 0, 0, 1}, {1, 0, 1, 0}, {0, 2, 0, 0}, {2, 1, 0, 0}, {4, 0, 0, 0}};
    ok = ok && got == want;
    ok = ok && enumerate_schemes(Asil::c()).size() == 3;
    ok = ok && enumerate_schemes(Asil::b()).size() == 2;
    ok = ok && enumerate_schemes(Asil::a()).size() == 1;
    for (int v = 1; v <= 4 && ok; ++v) {  // exhaustive Diophantine cross-check
      std::set<std::array<int, 4>> dio;
      for (int a1 = 0; a1 <= 4; ++a1)
        for (int a2 = 0; a2 <= 4; ++a2)
          for (int a3 = 0; a3 <= 4; ++a3)
            for (int a4 = 0; a4 <= 4; ++a4)
              if (a1 + 2 * a2 + 3 * a3 + 4 * a4 == v) dio.insert({a1, a2, a3, a4});
      std::set<std::array<int, 4>> have;
      for (const auto& s : enumerate_schemes(Asil::from_value(v))) have.insert(s.alpha);
      ok = ok && have == dio;
    }
    report(4, ok, "scheme enumeration: D=5 (canonical list), C=3, B=2, A=1, Diophantine-checked");
  }

  // --- Criterion 5: reliability linearization agreement ---------------------
  {
    const double rates[4] = {1e-6, 2e-6, 3e-6, 8e-7};
    const double t = 5000.0;
    bool ok = true;
    int cases = 0;
    for (int target = 2; target <= 4; ++target) {
      Asil asil = Asil::from_value(target);
      double budget = *log_pof_budget(asil, t);
      for (unsigned mask = 1; mask < 16; ++mask) {
        std::vector<double> hosting;
        double lhs = 0;
        for (int k = 0; k < 4; ++k)
          if (mask >> k & 1) {
            hosting.push_back(rates[k]);
            lhs += log_pof_coefficient(rates[k], t);
          }
        ok = ok && (lhs <= budget) == check_pmhf(asil, hosting, t).ok;
        ++cases;
      }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "log-linear check == product check on all %d hosting-subset/target cases",
                  cases);
    report(5, ok, buf);
  }

  // --- Criterion 6: PMHF pair classification --------------------------------
  {
    const double t = 5000.0;
    double p12 = pof_decomposed(std::vector<double>{1e-6, 2e-6}, t);
    double p13 = pof_decomposed(std::vector<double>{1e-6, 3e-6}, t);
    double budget = 1.0 - std::exp(-1e-8 * t);
    bool values_ok = std::fabs(p12 - 4.96266612123e-5) < 1e-9 &&
                     std::fabs(p13 - 7.42545110103e-5) < 1e-9 &&
                     std::fabs(budget - 4.99987500209e-5) < 1e-9;
    bool classify_ok = check_pmhf(Asil::d(), std::vector<double>{1e-6, 2e-6}, t).ok &&
                       !check_pmhf(Asil::d(), std::vector<double>{1e-6, 3e-6}, t).ok;
    char buf[180];
    std::snprintf(buf, sizeof(buf),
                  "{E1,E2} PoF %.5g < budget %.5g feasible; {E1,E3} PoF %.5g infeasible",
                  p12, budget, p13);
    report(6, values_ok && classify_ok, buf);
  }

  // --- Criterion 7: schedule validity of every collected solution -----------
  {
    int violations = 0;
    for (const auto& c : collected)
      violations += static_cast<int>(validate_solution(c.storage, c.solution).size());
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "independent re-validation of %zu solver outputs: %d violations",
                  collected.size(), violations);
    report(7, !collected.empty() && violations == 0, buf);
  }

  // --- Criterion 8: GA never undercuts the exact optimum --------------------
  {
    bool ok = true;
    // Case study: the paper's GA ignores scheduling; memory must be enforced
    // here because the case-study memory constraint binds the optimum.
    GaParams params;
    params.seed = 1;
    params.enforce_memory = true;
    GaResult case_ga = evolve(case_study, params);
    ok = ok && case_ga.best_fitness >= 98.0 - 1e-9;
    int done = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      GenConfig cfg;
      cfg.n_tasks = 4 + static_cast<int>(seed % 3);
      cfg.n_ecus = 4;
      cfg.seed = 500 + seed;
      cfg.scenario = seed % 2 ? GenScenario::DOnC : GenScenario::Mixed;
      ProblemInstance inst = generate_instance(cfg);
      MilpModel m = build_model(inst, "APP1", Priority::CostFirst);
      SolveReport rep = solve(m);
      if (rep.status != SolveStatus::Optimal) continue;
      GaParams p;
      p.population = 50;
      p.generations = 60;
      p.seed = seed;
      GaResult ga = evolve(inst, p);
      ok = ok && ga.best_fitness >= rep.best->cost_total - 1e-9;
      ++done;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "GA fitness >= exact optimum on case study (GA best %.0f) and %d generated "
                  "instances",
                  case_ga.best_fitness, done);
    report(8, ok && done == 50, buf);
  }

  // --- Criterion 9: scaling shape ------------------------------------------
  {
    const int kSeeds = 21;
    std::vector<int> sizes = {4, 6, 8};
    auto sweep = [&](GenScenario sc) {
      std::vector<double> medians;
      for (int n : sizes) {
        std::vector<double> times;
        for (int s = 0; s < kSeeds; ++s) {
          GenConfig cfg;
          cfg.n_tasks = n;
          cfg.n_ecus = 4;
          cfg.seed = 9000ull + 100ull * n + s;
          cfg.scenario = sc;
          ProblemInstance inst = generate_instance(cfg);
          MilpModel m = build_model(inst, "APP1", Priority::CostFirst);
          auto t0 = std::chrono::steady_clock::now();
          SolveReport rep = solve(m);
          times.push_back(
              std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
          (void)rep;
        }
        medians.push_back(median(times));
      }
      return medians;
    };
    auto donc = sweep(GenScenario::DOnC);
    auto conb = sweep(GenScenario::COnB);
    bool mono = true;
    for (size_t a = 1; a < donc.size(); ++a) mono = mono && donc[a] >= donc[a - 1];
    for (size_t a = 1; a < conb.size(); ++a) mono = mono && conb[a] >= conb[a - 1];
    bool dominance = true;
    for (size_t a = 0; a < donc.size(); ++a) dominance = dominance && donc[a] >= conb[a];
    char buf[220];
    std::snprintf(buf, sizeof(buf),
                  "median solve time (ms) d-on-c {%.2f, %.2f, %.2f} vs c-on-b {%.2f, %.2f, "
                  "%.2f} over %d seeds: nondecreasing %s, d-on-c dominates %s",
                  donc[0] * 1e3, donc[1] * 1e3, donc[2] * 1e3, conb[0] * 1e3, conb[1] * 1e3,
                  conb[2] * 1e3, kSeeds, mono ? "yes" : "no", dominance ? "yes" : "no");
    report(9, mono && dominance, buf);
  }

  std::printf("%s: %d criterion failure(s)\n", failures ? "RESULT FAIL" : "RESULT PASS", failures);
  return failures ? 1 : 0;
}
