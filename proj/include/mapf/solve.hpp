#pragma once

// Classical-setting solvers on 4-neighbor grids: constrained space-time A*,
// prioritized planning, and conflict-based search (CBS) for sum of costs.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mapf/model.hpp"

namespace mapf {

// vertex(v, t): the agent may not be at v at time t.
// edge(u, v, t): the agent may not move u -> v between t and t + 1 (u == v
// forbids waiting at u).
struct Constraint {
  enum class Kind : uint8_t { Vertex, Edge };

  int32_t agent = 0;
  Kind kind = Kind::Vertex;
  Cell from;
  Cell to;
  std::size_t time = 0;

  static Constraint vertex(int32_t agent, Cell v, std::size_t t) {
    return {agent, Kind::Vertex, v, v, t};
  }
  static Constraint edge(int32_t agent, Cell u, Cell v, std::size_t t) {
    return {agent, Kind::Edge, u, v, t};
  }

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// Wall-clock deadline plus an optional cap on expanded search nodes (CBS
// counts high-level nodes, the single-agent and prioritized searches count
// low-level expansions). Exhausting either yields a timeout status.
struct SolverBudget {
  using Clock = std::chrono::steady_clock;

  Clock::time_point deadline = Clock::time_point::max();
  std::optional<std::size_t> node_limit;

  static SolverBudget unlimited() { return {}; }
  static SolverBudget from_now(std::chrono::duration<double> limit,
                               std::optional<std::size_t> node_limit = std::nullopt) {
    return {Clock::now() + std::chrono::duration_cast<Clock::duration>(limit), node_limit};
  }
  bool expired() const noexcept { return Clock::now() >= deadline; }
  bool nodes_exhausted(std::size_t expanded) const noexcept {
    return node_limit && expanded >= *node_limit;
  }
};

enum class PathStatus : uint8_t { Found, NoPath, Timeout };

struct PathResult {
  PathStatus status = PathStatus::NoPath;
  Plan plan;
  std::size_t expanded = 0;
};

// Minimum-cost canonical plan from source to target respecting every
// constraint (the constraint's agent field is ignored). The agent must reach
// the target at a time after which the target is never constrained.
// Default horizon: |V| + latest constraint time + 1.
PathResult space_time_astar(const Grid& grid, Cell source, Cell target,
                            std::span<const Constraint> constraints,
                            std::optional<std::size_t> horizon, const SolverBudget& budget);

enum class SolveStatus : uint8_t { Solved, Timeout, Failure, Unsolvable };

std::string_view to_string(SolveStatus status) noexcept;

struct SolveStats {
  std::size_t high_level_expanded = 0;
  std::size_t high_level_generated = 0;
  std::size_t low_level_expanded = 0;
  std::size_t bypasses = 0;
  double runtime_ms = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Failure;
  Solution solution;
  // Objective value of `solution` under the profile (sum of costs for CBS).
  std::size_t cost = 0;
  SolveStats stats;
};

// Plans agents one at a time in `order`; each treats the earlier agents'
// plans (including their parked targets) as hard constraints. Incomplete.
// Requires stay-at-target and a forbidden set containing vertex; a forbidden
// cycle kind additionally requires following to be forbidden. Throws
// DomainError otherwise.
SolveResult prioritized(const Instance& instance, std::span<const int32_t> order,
                        const SemanticsProfile& profile, const SolverBudget& budget);

// Prioritized planning in agent index order.
SolveResult prioritized(const Instance& instance, const SemanticsProfile& profile,
                        const SolverBudget& budget);

struct CbsOptions {
  // Split cardinal conflicts first, then semi-cardinal, then the rest;
  // earliest time within each class. Off: always the earliest conflict.
  bool prioritize_conflicts = true;
  // Adopt a child's path in place of branching when it resolves the conflict
  // at equal cost with fewer conflicts.
  bool bypass = true;
  // Low-level ties broken towards fewer conflicts with the other agents.
  bool conflict_avoidance = true;
  // Exhaustive joint-configuration reachability is run first when the joint
  // state space has at most this many states; it proves unsolvability exactly.
  std::size_t feasibility_check_states = 200'000;
};

// Sum-of-costs optimal CBS. Requires the search-based profile: vertex, edge
// and swapping forbidden, following and cycle allowed, stay at target, sum of
// costs; throws DomainError otherwise.
SolveResult cbs(const Instance& instance, const SemanticsProfile& profile,
                const SolverBudget& budget, const CbsOptions& options = {});

// Whether the joint goal configuration is reachable from the joint start
// configuration by simultaneous wait/move steps that create no conflict the
// profile forbids. nullopt when the joint space exceeds max_states.
std::optional<bool> joint_goal_reachable(const Instance& instance, const SemanticsProfile& profile,
                                         std::size_t max_states);

}  // namespace mapf
