#pragma once

// Shared machinery for the solvers, on vertex ids rather than cells.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mapf/model.hpp"
#include "mapf/solve.hpp"

namespace mapf::detail {

using Path = std::vector<VertexId>;
inline constexpr std::size_t kForever = std::numeric_limits<std::size_t>::max();

class ConstraintTable {
 public:
  explicit ConstraintTable(std::size_t vertex_count) : vertex_count_(vertex_count) {}

  void add_vertex(VertexId v, std::size_t t);
  void add_edge(VertexId from, VertexId to, std::size_t t);
  // v is occupied from t onwards.
  void add_block_from(VertexId v, std::size_t t);

  bool vertex_blocked(VertexId v, std::size_t t) const;
  bool edge_blocked(VertexId from, VertexId to, std::size_t t) const;

  // Earliest time an agent may arrive at v and stay forever; kForever when v
  // is permanently blocked.
  std::size_t earliest_parking(VertexId v) const;

  // Latest time mentioned by any constraint (block_from counts its start).
  std::size_t max_time() const noexcept { return max_time_; }
  bool empty() const noexcept { return empty_; }

 private:
  uint64_t vkey(VertexId v, std::size_t t) const {
    return static_cast<uint64_t>(t) * vertex_count_ + static_cast<uint64_t>(v);
  }
  uint64_t ekey(VertexId from, VertexId to, std::size_t t) const {
    return vkey(from, t) * vertex_count_ + static_cast<uint64_t>(to);
  }

  std::size_t vertex_count_;
  std::unordered_set<uint64_t> vertex_;
  std::unordered_set<uint64_t> edge_;
  std::unordered_map<VertexId, std::size_t> block_from_;
  // Per vertex: one past the latest vertex or wait-edge constraint.
  std::unordered_map<VertexId, std::size_t> parking_after_;
  std::size_t max_time_ = 0;
  bool empty_ = true;
};

// Counts how many other agents occupy (v, t), with agents parked at their
// final vertex after their path ends.
class ConflictAvoidanceTable {
 public:
  ConflictAvoidanceTable() = default;
  void add_path(const Path& path);
  uint32_t count(VertexId v, std::size_t t) const;
  std::size_t horizon() const noexcept { return horizon_; }
  bool empty() const noexcept { return occupancy_.empty() && parked_.empty(); }

 private:
  std::unordered_map<uint64_t, uint32_t> occupancy_;
  std::unordered_map<VertexId, std::vector<std::size_t>> parked_;
  std::size_t horizon_ = 0;
};

struct LowLevelResult {
  PathStatus status = PathStatus::NoPath;
  Path path;
  std::size_t expanded = 0;
};

// Space-time A* over (vertex, time) with heuristic `h` (BFS distance to the
// target, -1 where unreachable). Ties on f go to fewer CAT conflicts, then to
// larger time.
LowLevelResult astar(const Grid& grid, VertexId source, VertexId target,
                     const std::vector<int32_t>& h, const ConstraintTable& constraints,
                     const ConflictAvoidanceTable* cat, std::optional<std::size_t> horizon,
                     const SolverBudget& budget, std::size_t* shared_expansions = nullptr);

// Widths of the multi-valued decision diagram of all cost-`cost` plans that
// respect the constraints: entry t is the number of vertices some such plan
// occupies at time t. Empty if no such plan exists.
std::vector<std::size_t> mdd_widths(const Grid& grid, VertexId source, VertexId target,
                                    std::size_t cost, const std::vector<int32_t>& h,
                                    const ConstraintTable& constraints);

Plan to_plan(const Grid& grid, int32_t agent, const Path& path);
std::vector<int32_t> heuristic_to(const Grid& grid, VertexId target);

}  // namespace mapf::detail
