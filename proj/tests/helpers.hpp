#pragma once

#include <array>
#include <string>
#include <vector>

#include "aalloc/model.hpp"

namespace aalloc::testing {

inline Ecu make_ecu(std::string id, Asil asil, int memory_mb, double rate) {
  Ecu e;
  e.id = std::move(id);
  e.asil = asil;
  e.memory_mb = memory_mb;
  e.failure_rate_per_hour = rate;
  return e;
}

// Uniform per-level tables: wcet(h) = wcet_a + 2*(h-1) on every ECU in
// `wcet_a`'s order; cost(h) = cost_a * h (keeps the D > 2B hierarchy loose
// but monotone, which is all most tests need).
inline Task make_task(std::string id, Asil asil, std::string app, int memory_mb,
                      std::vector<double> wcet_a, std::vector<double> cost_a) {
  Task t;
  t.id = std::move(id);
  t.asil = asil;
  t.application_id = std::move(app);
  for (int h = 0; h < 4; ++h) t.memory_mb[h] = memory_mb;
  for (size_t k = 0; k < wcet_a.size(); ++k) {
    std::array<double, 4> w{}, c{};
    for (int h = 0; h < 4; ++h) {
      w[h] = wcet_a[k] + 2 * h;
      c[h] = cost_a[k] * (h + 1);
    }
    t.wcet_ms.push_back(w);
    t.dev_cost.push_back(c);
  }
  t.localization.assign(wcet_a.size(), 1);
  return t;
}

inline DependencyEdge make_edge(std::string from, std::string to, double wcrt) {
  DependencyEdge e;
  e.from_task = std::move(from);
  e.to_task = std::move(to);
  e.wcrt_ms = wcrt;
  return e;
}

// Two ASIL-B ECUs, one ASIL-B task: the smallest end-to-end instance.
inline ProblemInstance tiny_instance() {
  ProblemInstance inst;
  inst.applications = {"APP1"};
  inst.ecus = {make_ecu("E1", Asil::b(), 1024, 1e-6), make_ecu("E2", Asil::b(), 1024, 2e-6)};
  inst.tasks = {make_task("T1", Asil::b(), "APP1", 64, {9, 7}, {5, 7})};
  return inst;
}

}  // namespace aalloc::testing
