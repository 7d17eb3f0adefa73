#include "low_level.hpp"

#include <algorithm>
#include <queue>

namespace mapf::detail {

void ConstraintTable::add_vertex(VertexId v, std::size_t t) {
  vertex_.insert(vkey(v, t));
  auto& after = parking_after_[v];
  after = std::max(after, t + 1);
  max_time_ = std::max(max_time_, t);
  empty_ = false;
}

void ConstraintTable::add_edge(VertexId from, VertexId to, std::size_t t) {
  edge_.insert(ekey(from, to, t));
  if (from == to) {
    auto& after = parking_after_[from];
    after = std::max(after, t + 1);
  }
  max_time_ = std::max(max_time_, t);
  empty_ = false;
}

void ConstraintTable::add_block_from(VertexId v, std::size_t t) {
  auto [it, inserted] = block_from_.emplace(v, t);
  if (!inserted) it->second = std::min(it->second, t);
  max_time_ = std::max(max_time_, t);
  empty_ = false;
}

bool ConstraintTable::vertex_blocked(VertexId v, std::size_t t) const {
  if (!block_from_.empty()) {
    auto it = block_from_.find(v);
    if (it != block_from_.end() && t >= it->second) return true;
  }
  return !vertex_.empty() && vertex_.contains(vkey(v, t));
}

bool ConstraintTable::edge_blocked(VertexId from, VertexId to, std::size_t t) const {
  return !edge_.empty() && edge_.contains(ekey(from, to, t));
}

std::size_t ConstraintTable::earliest_parking(VertexId v) const {
  if (block_from_.contains(v)) return kForever;
  auto it = parking_after_.find(v);
  return it == parking_after_.end() ? 0 : it->second;
}

void ConflictAvoidanceTable::add_path(const Path& path) {
  if (path.empty()) return;
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    ++occupancy_[(static_cast<uint64_t>(t) << 32) | static_cast<uint32_t>(path[t])];
  }
  parked_[path.back()].push_back(path.size() - 1);
  horizon_ = std::max(horizon_, path.size() - 1);
}

uint32_t ConflictAvoidanceTable::count(VertexId v, std::size_t t) const {
  uint32_t n = 0;
  if (!occupancy_.empty()) {
    auto it = occupancy_.find((static_cast<uint64_t>(t) << 32) | static_cast<uint32_t>(v));
    if (it != occupancy_.end()) n += it->second;
  }
  if (!parked_.empty()) {
    auto it = parked_.find(v);
    if (it != parked_.end()) {
      for (std::size_t since : it->second) n += t >= since ? 1 : 0;
    }
  }
  return n;
}

namespace {

struct SearchNode {
  VertexId v;
  uint32_t t;
  uint32_t f;
  uint32_t conflicts;
  int32_t parent;
};

}  // namespace

LowLevelResult astar(const Grid& grid, VertexId source, VertexId target,
                     const std::vector<int32_t>& h, const ConstraintTable& constraints,
                     const ConflictAvoidanceTable* cat, std::optional<std::size_t> horizon,
                     const SolverBudget& budget, std::size_t* shared_expansions) {
  LowLevelResult result;
  if (h[static_cast<std::size_t>(source)] < 0) return result;
  const std::size_t parking = constraints.earliest_parking(target);
  if (parking == kForever) return result;
  if (constraints.vertex_blocked(source, 0)) return result;

  const std::size_t limit =
      horizon.value_or(grid.cell_count() + constraints.max_time() + 1);
  // Beyond this time no constraint or CAT entry changes, so states collapse.
  const std::size_t settle =
      std::max(constraints.max_time(), cat ? cat->horizon() : 0) + 1;
  auto state_key = [&](VertexId v, std::size_t t) {
    return static_cast<uint64_t>(std::min(t, settle)) * grid.cell_count() +
           static_cast<uint64_t>(v);
  };
  const uint64_t dense_size = static_cast<uint64_t>(settle + 1) * grid.cell_count();
  const bool dense = dense_size <= (uint64_t{1} << 24);
  std::vector<uint8_t> closed_dense;
  std::unordered_set<uint64_t> closed_sparse;
  if (dense) closed_dense.assign(dense_size, 0);
  auto close = [&](uint64_t key) -> bool {
    if (dense) {
      if (closed_dense[key]) return false;
      closed_dense[key] = 1;
      return true;
    }
    return closed_sparse.insert(key).second;
  };

  auto f_of = [&](VertexId v, std::size_t t) {
    const auto hv = static_cast<std::size_t>(h[static_cast<std::size_t>(v)]);
    const std::size_t wait_for_parking = parking > t ? parking - t : 0;
    return static_cast<uint32_t>(t + std::max(hv, wait_for_parking));
  };

  std::vector<SearchNode> nodes;
  auto worse = [&](int32_t a, int32_t b) {
    const SearchNode& x = nodes[static_cast<std::size_t>(a)];
    const SearchNode& y = nodes[static_cast<std::size_t>(b)];
    if (x.f != y.f) return x.f > y.f;
    if (x.conflicts != y.conflicts) return x.conflicts > y.conflicts;
    if (x.t != y.t) return x.t < y.t;
    return a > b;
  };
  std::priority_queue<int32_t, std::vector<int32_t>, decltype(worse)> open(worse);

  nodes.push_back({source, 0, f_of(source, 0), cat ? cat->count(source, 0) : 0, -1});
  open.push(0);

  std::array<VertexId, 4> nbrs{};
  std::size_t local_expanded = 0;
  while (!open.empty()) {
    if (budget.expired()) {
      result.status = PathStatus::Timeout;
      break;
    }
    const std::size_t counter =
        shared_expansions ? *shared_expansions + local_expanded : local_expanded;
    if (!shared_expansions && budget.nodes_exhausted(counter)) {
      result.status = PathStatus::Timeout;
      break;
    }
    const int32_t idx = open.top();
    open.pop();
    const SearchNode node = nodes[static_cast<std::size_t>(idx)];
    if (!close(state_key(node.v, node.t))) continue;
    ++local_expanded;

    if (node.v == target && node.t >= parking) {
      for (int32_t i = idx; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent) {
        result.path.push_back(nodes[static_cast<std::size_t>(i)].v);
      }
      std::reverse(result.path.begin(), result.path.end());
      while (result.path.size() >= 2 && result.path[result.path.size() - 2] == target) {
        result.path.pop_back();
      }
      result.status = PathStatus::Found;
      break;
    }
    if (node.t + 1 > limit) continue;

    const int n = grid.neighbors(node.v, nbrs);
    for (int i = -1; i < n; ++i) {
      const VertexId next = i < 0 ? node.v : nbrs[static_cast<std::size_t>(i)];
      if (h[static_cast<std::size_t>(next)] < 0) continue;
      const std::size_t nt = node.t + 1;
      if (constraints.vertex_blocked(next, nt) || constraints.edge_blocked(node.v, next, node.t)) {
        continue;
      }
      if (dense ? closed_dense[state_key(next, nt)] != 0
                : closed_sparse.contains(state_key(next, nt))) {
        continue;
      }
      const uint32_t conflicts = node.conflicts + (cat ? cat->count(next, nt) : 0);
      nodes.push_back({next, static_cast<uint32_t>(nt), f_of(next, nt), conflicts, idx});
      open.push(static_cast<int32_t>(nodes.size() - 1));
    }
  }
  result.expanded = local_expanded;
  if (shared_expansions) *shared_expansions += local_expanded;
  return result;
}

std::vector<std::size_t> mdd_widths(const Grid& grid, VertexId source, VertexId target,
                                    std::size_t cost, const std::vector<int32_t>& h,
                                    const ConstraintTable& constraints) {
  std::vector<std::vector<VertexId>> levels(cost + 1);
  std::vector<uint32_t> stamp(grid.cell_count(), 0);
  uint32_t generation = 0;
  levels[0].push_back(source);
  std::array<VertexId, 4> nbrs{};
  for (std::size_t t = 0; t < cost; ++t) {
    ++generation;
    for (VertexId v : levels[t]) {
      const int n = grid.neighbors(v, nbrs);
      for (int i = -1; i < n; ++i) {
        const VertexId next = i < 0 ? v : nbrs[static_cast<std::size_t>(i)];
        const int32_t hn = h[static_cast<std::size_t>(next)];
        if (hn < 0 || static_cast<std::size_t>(hn) > cost - (t + 1)) continue;
        if (constraints.vertex_blocked(next, t + 1) || constraints.edge_blocked(v, next, t)) {
          continue;
        }
        if (stamp[static_cast<std::size_t>(next)] == generation) continue;
        stamp[static_cast<std::size_t>(next)] = generation;
        levels[t + 1].push_back(next);
      }
    }
  }
  if (std::find(levels[cost].begin(), levels[cost].end(), target) == levels[cost].end()) {
    return {};
  }
  // Backward pass: keep vertices with a legal successor still in the diagram.
  std::vector<std::size_t> widths(cost + 1, 0);
  std::vector<uint32_t> keep(grid.cell_count(), 0);
  ++generation;
  levels[cost] = {target};
  keep[static_cast<std::size_t>(target)] = generation;
  widths[cost] = 1;
  for (std::size_t t = cost; t-- > 0;) {
    const uint32_t next_gen = generation;
    ++generation;
    std::vector<VertexId> kept;
    for (VertexId v : levels[t]) {
      const int n = grid.neighbors(v, nbrs);
      bool ok = false;
      for (int i = -1; i < n && !ok; ++i) {
        const VertexId next = i < 0 ? v : nbrs[static_cast<std::size_t>(i)];
        ok = keep[static_cast<std::size_t>(next)] == next_gen &&
             !constraints.edge_blocked(v, next, t);
      }
      if (ok) kept.push_back(v);
    }
    for (VertexId v : kept) keep[static_cast<std::size_t>(v)] = generation;
    widths[t] = kept.size();
    levels[t] = std::move(kept);
  }
  return widths;
}

Plan to_plan(const Grid& grid, int32_t agent, const Path& path) {
  Plan plan;
  plan.agent = agent;
  plan.extent = extent_of(grid);
  plan.locations.reserve(path.size());
  for (VertexId v : path) plan.locations.push_back(grid.cell(v));
  return plan;
}

std::vector<int32_t> heuristic_to(const Grid& grid, VertexId target) {
  return distance_map(grid, grid.cell(target));
}

}  // namespace mapf::detail
