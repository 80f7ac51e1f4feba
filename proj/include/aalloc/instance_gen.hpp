#pragma once

#include <cstdint>
#include <string>

#include "aalloc/model.hpp"

namespace aalloc {

// Hardware/ASIL mix presets for the scaling experiments.
enum class GenScenario {
  NoDecomp,  // ASIL C ECUs, ASIL B/C tasks: no decomposition needed
  DOnC,      // ASIL D tasks on C/B ECUs: every task must decompose
  COnB,      // ASIL C tasks on B ECUs: every task must decompose
  Mixed,     // tasks drawn from A..D on C/B ECUs
};

struct GenConfig {
  int n_tasks = 6;
  int n_ecus = 4;
  std::uint64_t seed = 1;
  GenScenario scenario = GenScenario::Mixed;
  double edge_prob = 0.9;        // forward-edge probability on a random order
  bool binding_memory = false;   // default memories never bind
  double asil_c_fraction = 0.5;  // C vs B task split (NoDecomp scenario)
  bool decompose_all = false;
};

// Deterministic pure function of the config: the same config always yields an
// identical instance. Edges are sampled forward along a random permutation of
// the tasks, so the result is always a DAG. WCETs are integer ms in [1, 20]
// at ASIL A plus 2 ms per level step; WCRTs integer ms in [1, 15]; costs obey
// cost(D) > 2 cost(B) and cost(D) > cost(C) > cost(B) > cost(A) per
// (task, ECU); ECU failure rates cycle through the reference platform values.
ProblemInstance generate_instance(const GenConfig& config);  // throws std::invalid_argument

}  // namespace aalloc
