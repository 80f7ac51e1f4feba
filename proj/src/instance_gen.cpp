#include "aalloc/instance_gen.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace aalloc {

namespace {

// Platform-independent bounded draws (std::uniform_int_distribution output is
// implementation-defined, which would break byte-identical regeneration).
int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ProblemInstance generate_instance(const GenConfig& config) {
  if (config.n_tasks < 1) throw std::invalid_argument("generate_instance: n_tasks must be >= 1");
  if (config.n_ecus < 1) throw std::invalid_argument("generate_instance: n_ecus must be >= 1");
  if (config.edge_prob < 0 || config.edge_prob > 1)
    throw std::invalid_argument("generate_instance: edge_prob must be in [0, 1]");

  std::mt19937_64 rng(config.seed);
  ProblemInstance inst;
  inst.decompose_all = config.decompose_all;
  inst.applications = {"APP1"};

  static const double kRateCycle[4] = {1e-6, 2e-6, 3e-6, 8e-7};
  static const int kAsilCycleCB[4] = {3, 2, 2, 3};  // C, B, B, C
  for (int k = 0; k < config.n_ecus; ++k) {
    Ecu e;
    e.id = "E" + std::to_string(k + 1);
    switch (config.scenario) {
      case GenScenario::NoDecomp: e.asil = Asil::c(); break;
      case GenScenario::COnB: e.asil = Asil::b(); break;
      default: e.asil = Asil::from_value(kAsilCycleCB[k % 4]); break;
    }
    e.failure_rate_per_hour = kRateCycle[k % 4];
    e.memory_mb = 1 << 20;  // resized below when memory should bind
    inst.ecus.push_back(std::move(e));
  }

  long total_mem_demand = 0;
  for (int i = 0; i < config.n_tasks; ++i) {
    Task t;
    t.id = "T" + std::to_string(i + 1);
    t.application_id = "APP1";
    switch (config.scenario) {
      case GenScenario::NoDecomp:
        t.asil = uniform01(rng) < config.asil_c_fraction ? Asil::c() : Asil::b();
        break;
      case GenScenario::DOnC: t.asil = Asil::d(); break;
      case GenScenario::COnB: t.asil = Asil::c(); break;
      case GenScenario::Mixed: t.asil = Asil::from_value(uniform_int(rng, 1, 4)); break;
    }
    int mem_base = config.binding_memory ? uniform_int(rng, 50, 150) : 1;
    for (int h = 0; h < 4; ++h) t.memory_mb[h] = mem_base + (config.binding_memory ? 10 * h : 0);
    total_mem_demand += t.memory_mb[3];
    t.wcet_ms.resize(config.n_ecus);
    t.dev_cost.resize(config.n_ecus);
    t.localization.assign(config.n_ecus, 1);
    for (int k = 0; k < config.n_ecus; ++k) {
      int wcet_a = uniform_int(rng, 1, 20);
      for (int h = 0; h < 4; ++h) t.wcet_ms[k][h] = wcet_a + 2 * h;
      double ca = uniform_int(rng, 3, 10);
      double cb = ca + uniform_int(rng, 1, 5);
      double cc = cb + uniform_int(rng, 1, 5);
      double cd = std::max(cc, 2 * cb) + uniform_int(rng, 1, 5);
      t.dev_cost[k] = {ca, cb, cc, cd};
    }
    inst.tasks.push_back(std::move(t));
  }

  if (config.binding_memory) {
    // Leave room for roughly 60% of the worst-case demand per ECU so that
    // memory genuinely constrains placement without forcing infeasibility.
    int cap = static_cast<int>(std::max<long>(200, 6 * total_mem_demand / (5 * config.n_ecus)));
    for (auto& e : inst.ecus) e.memory_mb = cap;
  }

  std::vector<int> order(config.n_tasks);
  std::iota(order.begin(), order.end(), 0);
  for (int i = config.n_tasks - 1; i > 0; --i)
    std::swap(order[i], order[uniform_int(rng, 0, i)]);
  for (int a = 0; a < config.n_tasks; ++a) {
    for (int b = a + 1; b < config.n_tasks; ++b) {
      if (uniform01(rng) >= config.edge_prob) continue;
      DependencyEdge e;
      e.from_task = inst.tasks[order[a]].id;
      e.to_task = inst.tasks[order[b]].id;
      e.wcrt_ms = uniform_int(rng, 1, 15);
      inst.edges.push_back(std::move(e));
    }
  }
  return inst;
}

}  // namespace aalloc
