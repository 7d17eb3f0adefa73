#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "low_level.hpp"
#include "mapf/errors.hpp"
#include "mapf/objective.hpp"
#include "mapf/solve.hpp"

namespace mapf {

std::string_view to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::Timeout: return "timeout";
    case SolveStatus::Failure: return "failure";
    case SolveStatus::Unsolvable: return "unsolvable";
  }
  return "?";
}

PathResult space_time_astar(const Grid& grid, Cell source, Cell target,
                            std::span<const Constraint> constraints,
                            std::optional<std::size_t> horizon, const SolverBudget& budget) {
  if (!grid.passable(source) || !grid.passable(target)) {
    throw DomainError("source and target must be passable cells");
  }
  detail::ConstraintTable table(grid.cell_count());
  for (const Constraint& c : constraints) {
    if (!grid.in_bounds(c.from) || !grid.in_bounds(c.to)) continue;
    if (c.kind == Constraint::Kind::Vertex) {
      table.add_vertex(grid.index(c.from), c.time);
    } else {
      table.add_edge(grid.index(c.from), grid.index(c.to), c.time);
    }
  }
  const auto h = detail::heuristic_to(grid, grid.index(target));
  auto low = detail::astar(grid, grid.index(source), grid.index(target), h, table, nullptr,
                           horizon, budget);
  PathResult out;
  out.status = low.status;
  out.expanded = low.expanded;
  if (low.status == PathStatus::Found) out.plan = detail::to_plan(grid, 0, low.path);
  return out;
}

namespace {

double elapsed_ms(SolverBudget::Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(SolverBudget::Clock::now() - since).count();
}

void require_prioritized_profile(const SemanticsProfile& profile) {
  if (profile.target_behavior() != TargetBehavior::Stay) {
    throw DomainError("prioritized planning supports stay-at-target only");
  }
  if (!profile.forbids(ConflictKind::Vertex)) {
    throw DomainError("prioritized planning requires vertex conflicts to be forbidden");
  }
  if (profile.forbids(ConflictKind::Cycle) && !profile.forbids(ConflictKind::Following)) {
    throw DomainError(
        "prioritized planning cannot forbid cycles while allowing following conflicts");
  }
}

// Hard constraints a later agent inherits from an already planned path.
void reserve_path(detail::ConstraintTable& table, const detail::Path& path,
                  const SemanticsProfile& profile) {
  const std::size_t n = path.size() - 1;
  for (std::size_t x = 0; x < n; ++x) table.add_vertex(path[x], x);
  table.add_block_from(path[n], n);
  for (std::size_t x = 0; x < n; ++x) {
    if (profile.forbids(ConflictKind::Swapping) && path[x] != path[x + 1]) {
      table.add_edge(path[x + 1], path[x], x);
    }
    if (profile.forbids(ConflictKind::Following)) {
      // Neither agent may enter the vertex the other just left.
      table.add_vertex(path[x], x + 1);
      table.add_vertex(path[x + 1], x);
    }
  }
}

}  // namespace

SolveResult prioritized(const Instance& instance, std::span<const int32_t> order,
                        const SemanticsProfile& profile, const SolverBudget& budget) {
  require_prioritized_profile(profile);
  const auto started = SolverBudget::Clock::now();
  const std::size_t k = instance.agents();
  {
    std::vector<int32_t> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<int32_t> expected(k);
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) throw DomainError("order must be a permutation of the agents");
  }

  const Grid& grid = instance.grid();
  SolveResult result;
  std::vector<detail::Path> paths(k);
  detail::ConstraintTable table(grid.cell_count());
  std::size_t expanded = 0;
  for (int32_t agent : order) {
    const auto a = static_cast<std::size_t>(agent);
    const VertexId target = grid.index(instance.target(a));
    const auto h = detail::heuristic_to(grid, target);
    SolverBudget inner = budget;
    inner.node_limit.reset();
    auto low = detail::astar(grid, grid.index(instance.source(a)), target, h, table, nullptr,
                             std::nullopt, inner);
    expanded += low.expanded;
    if (low.status == PathStatus::Found && budget.nodes_exhausted(expanded)) {
      low.status = PathStatus::Timeout;
    }
    if (low.status != PathStatus::Found) {
      result.status = low.status == PathStatus::Timeout ? SolveStatus::Timeout
                                                        : SolveStatus::Failure;
      result.stats.low_level_expanded = expanded;
      result.stats.runtime_ms = elapsed_ms(started);
      return result;
    }
    reserve_path(table, low.path, profile);
    paths[a] = std::move(low.path);
  }
  for (std::size_t i = 0; i < k; ++i) {
    result.solution.plans.push_back(detail::to_plan(grid, static_cast<int32_t>(i), paths[i]));
  }
  result.status = SolveStatus::Solved;
  result.cost = objective_value(result.solution, profile);
  result.stats.low_level_expanded = expanded;
  result.stats.runtime_ms = elapsed_ms(started);
  return result;
}

SolveResult prioritized(const Instance& instance, const SemanticsProfile& profile,
                        const SolverBudget& budget) {
  std::vector<int32_t> order(instance.agents());
  std::iota(order.begin(), order.end(), 0);
  return prioritized(instance, order, profile, budget);
}

namespace {

// Joint configurations encoded base-|V| over passable-vertex indices.
class JointSpace {
 public:
  JointSpace(const Instance& instance, const SemanticsProfile& profile)
      : instance_(instance), profile_(profile), grid_(instance.grid()) {
    compact_.assign(grid_.cell_count(), -1);
    for (VertexId v = 0; v < static_cast<VertexId>(grid_.cell_count()); ++v) {
      if (grid_.passable(v)) {
        compact_[static_cast<std::size_t>(v)] = static_cast<int32_t>(vertices_.size());
        vertices_.push_back(v);
      }
    }
  }

  double state_count() const {
    return std::pow(static_cast<double>(vertices_.size()),
                    static_cast<double>(instance_.agents()));
  }

  uint64_t encode(const std::vector<VertexId>& config) const {
    uint64_t key = 0;
    for (VertexId v : config) {
      key = key * vertices_.size() + static_cast<uint64_t>(compact_[static_cast<std::size_t>(v)]);
    }
    return key;
  }

  std::vector<VertexId> decode(uint64_t key) const {
    std::vector<VertexId> config(instance_.agents());
    for (std::size_t i = config.size(); i-- > 0;) {
      config[i] = vertices_[key % vertices_.size()];
      key /= vertices_.size();
    }
    return config;
  }

  // Calls emit(next_config) for every legal joint step from config.
  template <typename Emit>
  void successors(const std::vector<VertexId>& config, Emit&& emit) const {
    std::vector<VertexId> next(config.size());
    expand(config, next, 0, emit);
  }

 private:
  template <typename Emit>
  void expand(const std::vector<VertexId>& from, std::vector<VertexId>& next, std::size_t agent,
              Emit& emit) const {
    if (agent == from.size()) {
      if (!profile_.forbids(ConflictKind::Following) && profile_.forbids(ConflictKind::Cycle) &&
          has_rotation(from, next)) {
        return;
      }
      emit(next);
      return;
    }
    std::array<VertexId, 4> nbrs{};
    const int n = grid_.neighbors(from[agent], nbrs);
    for (int i = -1; i < n; ++i) {
      const VertexId to = i < 0 ? from[agent] : nbrs[static_cast<std::size_t>(i)];
      bool ok = true;
      for (std::size_t j = 0; j < agent && ok; ++j) {
        if (next[j] == to) ok = false;  // vertex (and hence edge) conflict
        if (profile_.forbids(ConflictKind::Swapping) && next[j] == from[agent] &&
            from[j] == to) {
          ok = false;
        }
        if (profile_.forbids(ConflictKind::Following) &&
            (to == from[j] || next[j] == from[agent])) {
          ok = false;
        }
      }
      if (!ok) continue;
      next[agent] = to;
      expand(from, next, agent + 1, emit);
    }
  }

  // With distinct positions each agent moves into at most one other agent's
  // vertex, so following that successor link finds any rotation.
  static bool has_rotation(const std::vector<VertexId>& from, const std::vector<VertexId>& to) {
    const std::size_t k = from.size();
    std::vector<int> succ(k, -1);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (i != j && to[i] == from[j]) succ[i] = static_cast<int>(j);
      }
    }
    for (std::size_t s = 0; s < k; ++s) {
      std::size_t steps = 0;
      int cur = succ[s];
      while (cur >= 0 && steps <= k) {
        if (static_cast<std::size_t>(cur) == s) return true;
        cur = succ[static_cast<std::size_t>(cur)];
        ++steps;
      }
    }
    return false;
  }

  const Instance& instance_;
  const SemanticsProfile& profile_;
  const Grid& grid_;
  std::vector<int32_t> compact_;
  std::vector<VertexId> vertices_;
};

}  // namespace

std::optional<bool> joint_goal_reachable(const Instance& instance, const SemanticsProfile& profile,
                                         std::size_t max_states) {
  JointSpace space(instance, profile);
  if (space.state_count() > static_cast<double>(max_states)) return std::nullopt;
  const Grid& grid = instance.grid();
  std::vector<VertexId> start;
  std::vector<VertexId> goal;
  for (std::size_t i = 0; i < instance.agents(); ++i) {
    start.push_back(grid.index(instance.source(i)));
    goal.push_back(grid.index(instance.target(i)));
  }
  const uint64_t goal_key = space.encode(goal);
  std::unordered_set<uint64_t> seen{space.encode(start)};
  std::deque<uint64_t> queue{space.encode(start)};
  while (!queue.empty()) {
    const uint64_t key = queue.front();
    queue.pop_front();
    if (key == goal_key) return true;
    space.successors(space.decode(key), [&](const std::vector<VertexId>& next) {
      const uint64_t nk = space.encode(next);
      if (seen.insert(nk).second) queue.push_back(nk);
    });
  }
  return false;
}

}  // namespace mapf
