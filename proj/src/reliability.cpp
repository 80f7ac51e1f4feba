#include "aalloc/reliability.hpp"

#include <cmath>
#include <stdexcept>

namespace aalloc {

std::optional<double> pmhf_target(Asil level) {
  switch (level.value()) {
    case 4: return 1e-8;
    case 3: return 1e-7;
    case 2: return 1e-7;
    default: return std::nullopt;
  }
}

double pof(double failure_rate_per_hour, double t_hours) {
  if (failure_rate_per_hour <= 0) throw std::domain_error("failure rate must be positive");
  if (t_hours <= 0) throw std::domain_error("lifetime must be positive");
  return -std::expm1(-failure_rate_per_hour * t_hours);
}

double pof_decomposed(std::span<const double> ecu_failure_rates, double t_hours) {
  if (ecu_failure_rates.empty())
    throw std::invalid_argument("pof_decomposed requires at least one hosting ECU");
  double p = 1.0;
  for (double rate : ecu_failure_rates) p *= pof(rate, t_hours);
  return p;
}

PmhfCheck check_pmhf(Asil task_asil, std::span<const double> hosting_failure_rates,
                     double t_hours) {
  auto target = pmhf_target(task_asil);
  if (!target) return {true, false};
  double budget = pof(*target, t_hours);
  return {pof_decomposed(hosting_failure_rates, t_hours) <= budget, true};
}

double log_pof_coefficient(double failure_rate_per_hour, double t_hours) {
  return std::log(pof(failure_rate_per_hour, t_hours));
}

std::optional<double> log_pof_budget(Asil level, double t_hours) {
  auto target = pmhf_target(level);
  if (!target) return std::nullopt;
  return std::log(pof(*target, t_hours));
}

}  // namespace aalloc
