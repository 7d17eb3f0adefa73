#include "mapf/objective.hpp"

#include <algorithm>

namespace mapf {

std::size_t plan_cost(const Plan& plan) noexcept {
  const auto& loc = plan.locations;
  if (loc.empty()) return 0;
  std::size_t x = loc.size() - 1;
  while (x > 0 && loc[x - 1] == loc.back()) --x;
  return x;
}

std::size_t makespan(const Solution& solution) noexcept {
  std::size_t best = 0;
  for (const Plan& p : solution.plans) best = std::max(best, p.length());
  return best;
}

std::size_t sum_of_costs(const Solution& solution, TargetBehavior /*behavior*/) noexcept {
  std::size_t total = 0;
  for (const Plan& p : solution.plans) total += plan_cost(p);
  return total;
}

std::size_t objective_value(const Solution& solution, const SemanticsProfile& profile) noexcept {
  return profile.objective() == Objective::Makespan
             ? makespan(solution)
             : sum_of_costs(solution, profile.target_behavior());
}

}  // namespace mapf
