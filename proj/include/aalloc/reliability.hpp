#pragma once

#include <optional>
#include <span>

#include "aalloc/asil.hpp"

namespace aalloc {

// PMHF failure-rate target per ASIL, per hour: D -> 1e-8, C -> 1e-7, B -> 1e-7.
// A and QM have no quantitative target.
std::optional<double> pmhf_target(Asil level);

// Probability of failure 1 - e^(-lambda * t). Throws std::domain_error on
// non-positive inputs.
double pof(double failure_rate_per_hour, double t_hours);

// Parallel-system PoF: product of per-ECU PoF terms over the hosting ECUs.
// Throws std::invalid_argument on an empty list.
double pof_decomposed(std::span<const double> ecu_failure_rates, double t_hours);

struct PmhfCheck {
  bool ok = false;
  bool has_target = false;  // false for A/QM: passes with "no target defined"
};

// True iff the hosting set's combined PoF stays within the target budget for
// the ASIL before decomposition.
PmhfCheck check_pmhf(Asil task_asil, std::span<const double> hosting_failure_rates, double t_hours);

// ln(1 - e^(-lambda * t)): the coefficient of a mapping variable in the
// log-linearized reliability constraint. Strictly increasing in lambda.
double log_pof_coefficient(double failure_rate_per_hour, double t_hours);

// Right-hand side of the log-linearized constraint: ln(1 - e^(-lambda_tar t)).
// nullopt when the ASIL has no target.
std::optional<double> log_pof_budget(Asil level, double t_hours);

}  // namespace aalloc
