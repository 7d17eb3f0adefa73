#include "mapf/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "mapf/errors.hpp"

namespace mapf {

std::ostream& operator<<(std::ostream& os, const Cell& c) {
  return os << '(' << c.x << ',' << c.y << ')';
}

Grid::Grid(int32_t width, int32_t height, std::vector<uint8_t> passable)
    : width_(width), height_(height), passable_(std::move(passable)) {
  if (width < 1 || height < 1) {
    throw BoundsError("grid dimensions must be positive, got " + std::to_string(width) + "x" +
                      std::to_string(height));
  }
  if (passable_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw BoundsError("passability mask size does not match grid dimensions");
  }
}

std::size_t Grid::passable_count() const noexcept {
  return static_cast<std::size_t>(std::count(passable_.begin(), passable_.end(), uint8_t{1}));
}

bool Grid::adjacent(Cell a, Cell b) const noexcept {
  if (!passable(a) || !passable(b)) return false;
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1;
}

int Grid::neighbors(VertexId v, std::array<VertexId, 4>& out) const noexcept {
  const Cell c = cell(v);
  int n = 0;
  if (c.x + 1 < width_ && passable_[v + 1]) out[n++] = v + 1;
  if (c.x > 0 && passable_[v - 1]) out[n++] = v - 1;
  if (c.y + 1 < height_ && passable_[v + width_]) out[n++] = v + width_;
  if (c.y > 0 && passable_[v - width_]) out[n++] = v - width_;
  return n;
}

Grid make_grid(int32_t width, int32_t height, std::span<const Cell> blocked) {
  if (width < 1 || height < 1) {
    throw BoundsError("grid dimensions must be positive");
  }
  std::vector<uint8_t> mask(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 1);
  for (const Cell& c : blocked) {
    if (c.x < 0 || c.y < 0 || c.x >= width || c.y >= height) {
      std::ostringstream msg;
      msg << "blocked cell " << c << " outside " << width << "x" << height << " grid";
      throw BoundsError(msg.str());
    }
    mask[static_cast<std::size_t>(c.y * width + c.x)] = 0;
  }
  return Grid(width, height, std::move(mask));
}

std::vector<int32_t> distance_map(const Grid& grid, Cell from) {
  std::vector<int32_t> dist(grid.cell_count(), -1);
  if (!grid.passable(from)) return dist;
  std::deque<VertexId> queue;
  const VertexId start = grid.index(from);
  dist[static_cast<std::size_t>(start)] = 0;
  queue.push_back(start);
  std::array<VertexId, 4> nbrs{};
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    const int n = grid.neighbors(v, nbrs);
    for (int i = 0; i < n; ++i) {
      auto& d = dist[static_cast<std::size_t>(nbrs[i])];
      if (d < 0) {
        d = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(nbrs[i]);
      }
    }
  }
  return dist;
}

Instance::Instance(Grid grid, std::vector<Cell> sources, std::vector<Cell> targets)
    : grid_(std::move(grid)), sources_(std::move(sources)), targets_(std::move(targets)) {
  if (sources_.size() != targets_.size()) {
    throw InstanceError("source and target lists differ in length");
  }
  if (sources_.empty()) {
    throw InstanceError("instance needs at least one agent");
  }
  auto check_distinct = [](std::vector<Cell> cells, const char* what) {
    std::sort(cells.begin(), cells.end());
    auto dup = std::adjacent_find(cells.begin(), cells.end());
    if (dup != cells.end()) {
      std::ostringstream msg;
      msg << what << " " << *dup << " assigned to more than one agent";
      throw InstanceError(msg.str());
    }
  };
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    if (!grid_.passable(sources_[i]) || !grid_.passable(targets_[i])) {
      std::ostringstream msg;
      msg << "agent " << i << ": source " << sources_[i] << " or target " << targets_[i]
          << " is not a passable cell";
      throw InstanceError(msg.str());
    }
  }
  check_distinct(sources_, "source");
  check_distinct(targets_, "target");
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    const auto dist = distance_map(grid_, sources_[i]);
    if (dist[static_cast<std::size_t>(grid_.index(targets_[i]))] < 0) {
      std::ostringstream msg;
      msg << "agent " << i << ": target " << targets_[i] << " unreachable from source "
          << sources_[i];
      throw InstanceError(msg.str());
    }
  }
}

bool is_canonical(const Plan& plan) noexcept {
  const auto& loc = plan.locations;
  return loc.size() < 2 || loc[loc.size() - 2] != loc.back();
}

Plan canonicalize(Plan plan) {
  auto& loc = plan.locations;
  while (loc.size() >= 2 && loc[loc.size() - 2] == loc.back()) loc.pop_back();
  return plan;
}

std::string_view to_string(ConflictKind kind) noexcept {
  switch (kind) {
    case ConflictKind::Vertex: return "vertex";
    case ConflictKind::Edge: return "edge";
    case ConflictKind::Following: return "following";
    case ConflictKind::Cycle: return "cycle";
    case ConflictKind::Swapping: return "swapping";
  }
  return "?";
}

std::string_view to_string(TargetBehavior behavior) noexcept {
  return behavior == TargetBehavior::Stay ? "stay" : "disappear";
}

std::string_view to_string(Objective objective) noexcept {
  return objective == Objective::Makespan ? "makespan" : "soc";
}

std::optional<ConflictKind> parse_conflict_kind(std::string_view name) noexcept {
  for (auto k : kAllConflictKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::optional<TargetBehavior> parse_target_behavior(std::string_view name) noexcept {
  if (name == "stay") return TargetBehavior::Stay;
  if (name == "disappear") return TargetBehavior::Disappear;
  return std::nullopt;
}

std::optional<Objective> parse_objective(std::string_view name) noexcept {
  if (name == "makespan") return Objective::Makespan;
  if (name == "soc" || name == "sum_of_costs" || name == "sum-of-costs") {
    return Objective::SumOfCosts;
  }
  return std::nullopt;
}

ConflictSet dominance_closure(ConflictSet forbidden) noexcept {
  if (forbidden.contains(ConflictKind::Vertex)) forbidden.insert(ConflictKind::Edge);
  if (forbidden.contains(ConflictKind::Following)) forbidden.insert(ConflictKind::Cycle);
  if (forbidden.contains(ConflictKind::Cycle)) forbidden.insert(ConflictKind::Swapping);
  return forbidden;
}

ConflictSet parse_conflict_set(std::string_view text) {
  ConflictSet out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) {
      auto kind = parse_conflict_kind(token);
      if (!kind) throw DomainError("unknown conflict kind '" + std::string(token) + "'");
      out.insert(*kind);
    }
    pos = comma + 1;
  }
  return out;
}

std::string to_string(ConflictSet set) {
  std::string out;
  for (auto k : kAllConflictKinds) {
    if (!set.contains(k)) continue;
    if (!out.empty()) out += ',';
    out += to_string(k);
  }
  return out;
}

SemanticsProfile SemanticsProfile::search_based() {
  return {{ConflictKind::Vertex, ConflictKind::Edge, ConflictKind::Swapping}, TargetBehavior::Stay,
          Objective::SumOfCosts};
}

SemanticsProfile SemanticsProfile::pebble_motion() {
  return {{ConflictKind::Vertex, ConflictKind::Edge, ConflictKind::Swapping,
           ConflictKind::Following},
          TargetBehavior::Stay, Objective::SumOfCosts};
}

MoveTable neighborhood_moves(int k_exponent) {
  if (k_exponent < 2 || k_exponent > 5) {
    throw DomainError("neighborhood exponent must be in [2, 5], got " +
                      std::to_string(k_exponent));
  }
  // Each refinement inserts the vector sum (Farey mediant) between every pair
  // of cyclically adjacent headings, doubling the table.
  std::vector<std::pair<int32_t, int32_t>> dirs = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int level = 2; level < k_exponent; ++level) {
    std::vector<std::pair<int32_t, int32_t>> refined;
    refined.reserve(dirs.size() * 2);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const auto& a = dirs[i];
      const auto& b = dirs[(i + 1) % dirs.size()];
      refined.push_back(a);
      refined.emplace_back(a.first + b.first, a.second + b.second);
    }
    dirs = std::move(refined);
  }
  MoveTable table;
  table.k_exponent = k_exponent;
  table.moves.reserve(dirs.size());
  for (auto [dx, dy] : dirs) {
    table.moves.push_back(Move{dx, dy, std::hypot(static_cast<double>(dx), static_cast<double>(dy))});
  }
  return table;
}

std::optional<Cell> location_at(const Plan& plan, std::size_t x, TargetBehavior behavior) {
  if (plan.locations.empty()) return std::nullopt;
  if (x < plan.locations.size()) return plan.locations[x];
  if (behavior == TargetBehavior::Stay) return plan.locations.back();
  return std::nullopt;
}

}  // namespace mapf
