#include "mapf/validate.hpp"

#include <sstream>

#include "mapf/errors.hpp"
#include "mapf/objective.hpp"

namespace mapf {

namespace {

std::string describe(Cell c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

void check_plan(const Instance& instance, std::size_t agent, const Plan& plan,
                std::vector<StructuralError>& errors) {
  const Grid& grid = instance.grid();
  const auto id = static_cast<int32_t>(agent);
  const auto& loc = plan.locations;
  if (loc.empty()) {
    errors.push_back({id, 0, "plan is empty"});
    return;
  }
  if (loc.front() != instance.source(agent)) {
    errors.push_back({id, 0,
                      "starts at " + describe(loc.front()) + ", expected source " +
                          describe(instance.source(agent))});
  }
  for (std::size_t x = 0; x < loc.size(); ++x) {
    if (!grid.in_bounds(loc[x])) {
      errors.push_back({id, x, describe(loc[x]) + " is outside the grid"});
    } else if (!grid.passable(loc[x])) {
      errors.push_back({id, x, describe(loc[x]) + " is blocked"});
    }
    if (x + 1 < loc.size() && grid.passable(loc[x]) && grid.passable(loc[x + 1]) &&
        !grid.legal_step(loc[x], loc[x + 1])) {
      errors.push_back({id, x,
                        "illegal move " + describe(loc[x]) + " -> " + describe(loc[x + 1])});
    }
  }
  if (loc.back() != instance.target(agent)) {
    errors.push_back({id, loc.size() - 1,
                      "ends at " + describe(loc.back()) + ", expected target " +
                          describe(instance.target(agent))});
  }
}

}  // namespace

ValidationReport validate(const Instance& instance, const Solution& solution,
                          const SemanticsProfile& profile) {
  if (solution.agents() != instance.agents()) {
    throw ShapeError("solution has " + std::to_string(solution.agents()) + " plans, instance has " +
                     std::to_string(instance.agents()) + " agents");
  }
  ValidationReport report;
  Solution canonical;
  canonical.plans.reserve(solution.plans.size());
  for (std::size_t i = 0; i < solution.plans.size(); ++i) {
    const Plan& plan = solution.plans[i];
    check_plan(instance, i, plan, report.structural_errors);
    Plan copy = plan;
    copy.agent = static_cast<int32_t>(i);
    copy.extent = extent_of(instance.grid());
    if (!is_canonical(copy)) {
      report.warnings.push_back("agent " + std::to_string(i) +
                                ": trailing waits at the final location stripped");
      copy = canonicalize(std::move(copy));
    }
    canonical.plans.push_back(std::move(copy));
  }
  report.conflicts = solution_conflicts(canonical, profile);
  report.makespan = makespan(canonical);
  report.sum_of_costs = sum_of_costs(canonical, profile.target_behavior());
  report.valid = report.structural_errors.empty() && report.conflicts.empty();
  return report;
}

void print_report(std::ostream& os, const ValidationReport& report) {
  os << "valid " << (report.valid ? "true" : "false") << '\n';
  os << "makespan " << report.makespan << '\n';
  os << "sum_of_costs " << report.sum_of_costs << '\n';
  for (const auto& e : report.structural_errors) {
    os << "error agent=" << e.agent << " t=" << e.time << ' ' << e.description << '\n';
  }
  for (const auto& c : report.conflicts) os << "conflict " << c << '\n';
  for (const auto& w : report.warnings) os << "warning " << w << '\n';
}

}  // namespace mapf
