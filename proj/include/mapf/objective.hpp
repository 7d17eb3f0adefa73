#pragma once

#include <cstddef>

#include "mapf/model.hpp"

namespace mapf {

// Time of final arrival: the smallest x such that the plan stays at its final
// location for every step from x to the end. Waiting at the target before a
// later departure is charged; waiting after the final arrival is free.
std::size_t plan_cost(const Plan& plan) noexcept;

// Longest plan, in actions.
std::size_t makespan(const Solution& solution) noexcept;

// Sum of plan_cost over agents. Stay and disappear give the same value
// because trailing target waits are never charged.
std::size_t sum_of_costs(const Solution& solution, TargetBehavior behavior) noexcept;

std::size_t objective_value(const Solution& solution, const SemanticsProfile& profile) noexcept;

}  // namespace mapf
