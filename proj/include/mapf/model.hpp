#pragma once

// Core problem types for classical multi-agent pathfinding on 4-neighbor
// grids: cells, grids, instances, plans, solutions and semantics profiles.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mapf {

// Grid vertex. x is the column, y the row, both 0-based.
struct Cell {
  int32_t x = 0;
  int32_t y = 0;

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
  // Row-major order: (y, x).
  friend constexpr std::strong_ordering operator<=>(const Cell& a, const Cell& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

std::ostream& operator<<(std::ostream& os, const Cell& c);

using VertexId = int32_t;
inline constexpr VertexId kNoVertex = -1;

// Undirected unit-cost grid. Edges join passable cells that differ by one in
// exactly one coordinate.
class Grid {
 public:
  Grid(int32_t width, int32_t height, std::vector<uint8_t> passable);

  int32_t width() const noexcept { return width_; }
  int32_t height() const noexcept { return height_; }
  std::size_t cell_count() const noexcept { return passable_.size(); }
  std::size_t passable_count() const noexcept;

  bool in_bounds(Cell c) const noexcept {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  bool passable(Cell c) const noexcept { return in_bounds(c) && passable_[index(c)] != 0; }
  bool passable(VertexId v) const noexcept { return passable_[static_cast<std::size_t>(v)] != 0; }

  VertexId index(Cell c) const noexcept { return c.y * width_ + c.x; }
  Cell cell(VertexId v) const noexcept { return Cell{v % width_, v / width_}; }

  // True iff a and b are both passable and 4-adjacent.
  bool adjacent(Cell a, Cell b) const noexcept;
  // Legal single action: wait on a passable cell or move along an edge.
  bool legal_step(Cell from, Cell to) const noexcept {
    return from == to ? passable(from) : adjacent(from, to);
  }

  // Passable 4-neighbors of v written into out; returns how many.
  int neighbors(VertexId v, std::array<VertexId, 4>& out) const noexcept;

  const std::vector<uint8_t>& passable_mask() const noexcept { return passable_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int32_t width_;
  int32_t height_;
  std::vector<uint8_t> passable_;
};

// Throws BoundsError for non-positive dimensions or out-of-range blocked cells.
Grid make_grid(int32_t width, int32_t height, std::span<const Cell> blocked);

// BFS hop distance from `from` to every vertex; -1 where unreachable.
std::vector<int32_t> distance_map(const Grid& grid, Cell from);

// The classical problem tuple <G, s, t>.
class Instance {
 public:
  // Throws InstanceError if any invariant fails: passable endpoints, pairwise
  // distinct sources, pairwise distinct targets, source and target connected.
  Instance(Grid grid, std::vector<Cell> sources, std::vector<Cell> targets);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t agents() const noexcept { return sources_.size(); }
  Cell source(std::size_t agent) const { return sources_.at(agent); }
  Cell target(std::size_t agent) const { return targets_.at(agent); }
  const std::vector<Cell>& sources() const noexcept { return sources_; }
  const std::vector<Cell>& targets() const noexcept { return targets_; }

 private:
  Grid grid_;
  std::vector<Cell> sources_;
  std::vector<Cell> targets_;
};

// Grid dimensions a plan was produced for; {0,0} means unspecified.
struct GridExtent {
  int32_t width = 0;
  int32_t height = 0;
  friend bool operator==(const GridExtent&, const GridExtent&) = default;
  bool specified() const noexcept { return width > 0 && height > 0; }
};

inline GridExtent extent_of(const Grid& g) { return {g.width(), g.height()}; }

// Single-agent plan stored as locations: locations[x] is where the agent is
// after x actions, so a plan of n actions has n + 1 entries.
struct Plan {
  int32_t agent = 0;
  std::vector<Cell> locations;
  GridExtent extent{};

  // Number of actions.
  std::size_t length() const noexcept { return locations.empty() ? 0 : locations.size() - 1; }
  Cell final_location() const { return locations.back(); }

  friend bool operator==(const Plan&, const Plan&) = default;
};

// True when the plan carries no trailing wait at its final location.
bool is_canonical(const Plan& plan) noexcept;
// Strips trailing waits at the final location.
Plan canonicalize(Plan plan);

struct Solution {
  std::vector<Plan> plans;

  std::size_t agents() const noexcept { return plans.size(); }
  friend bool operator==(const Solution&, const Solution&) = default;
};

enum class TargetBehavior : uint8_t { Stay, Disappear };
enum class Objective : uint8_t { Makespan, SumOfCosts };

enum class ConflictKind : uint8_t { Vertex = 0, Edge = 1, Following = 2, Cycle = 3, Swapping = 4 };
inline constexpr std::array<ConflictKind, 5> kAllConflictKinds = {
    ConflictKind::Vertex, ConflictKind::Edge, ConflictKind::Following, ConflictKind::Cycle,
    ConflictKind::Swapping};

std::string_view to_string(ConflictKind kind) noexcept;
std::string_view to_string(TargetBehavior behavior) noexcept;
std::string_view to_string(Objective objective) noexcept;
std::optional<ConflictKind> parse_conflict_kind(std::string_view name) noexcept;
std::optional<TargetBehavior> parse_target_behavior(std::string_view name) noexcept;
std::optional<Objective> parse_objective(std::string_view name) noexcept;

// Small bitset over conflict kinds.
class ConflictSet {
 public:
  constexpr ConflictSet() = default;
  constexpr ConflictSet(std::initializer_list<ConflictKind> kinds) {
    for (auto k : kinds) insert(k);
  }

  constexpr bool contains(ConflictKind k) const noexcept { return (bits_ >> bit(k)) & 1U; }
  constexpr void insert(ConflictKind k) noexcept { bits_ |= static_cast<uint8_t>(1U << bit(k)); }
  constexpr void erase(ConflictKind k) noexcept { bits_ &= static_cast<uint8_t>(~(1U << bit(k))); }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool subset_of(ConflictSet other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr uint8_t bits() const noexcept { return bits_; }

  friend constexpr bool operator==(ConflictSet, ConflictSet) = default;

 private:
  static constexpr unsigned bit(ConflictKind k) noexcept { return static_cast<unsigned>(k); }
  uint8_t bits_ = 0;
};

// Adds every kind implied by dominance: vertex => edge; following => cycle,
// swapping; cycle => swapping.
ConflictSet dominance_closure(ConflictSet forbidden) noexcept;

// Comma-separated kind names, e.g. "vertex,edge,swapping". Throws DomainError
// on unknown names. The result is not closed; SemanticsProfile closes it.
ConflictSet parse_conflict_set(std::string_view text);
std::string to_string(ConflictSet set);

// Which conflicts are forbidden, what arrived agents do, and which objective
// is minimized. The forbidden set is always dominance-closed.
class SemanticsProfile {
 public:
  SemanticsProfile(ConflictSet forbidden, TargetBehavior target_behavior, Objective objective)
      : forbidden_(dominance_closure(forbidden)),
        target_behavior_(target_behavior),
        objective_(objective) {}

  // {vertex, edge, swapping} forbidden, stay at target, sum of costs.
  static SemanticsProfile search_based();
  // Search-based plus following forbidden.
  static SemanticsProfile pebble_motion();

  ConflictSet forbidden() const noexcept { return forbidden_; }
  bool forbids(ConflictKind k) const noexcept { return forbidden_.contains(k); }
  TargetBehavior target_behavior() const noexcept { return target_behavior_; }
  Objective objective() const noexcept { return objective_; }

  friend bool operator==(const SemanticsProfile&, const SemanticsProfile&) = default;

 private:
  ConflictSet forbidden_;
  TargetBehavior target_behavior_;
  Objective objective_;
};

// One entry of a 2^k-neighborhood movement table.
struct Move {
  int32_t dx = 0;
  int32_t dy = 0;
  double cost = 0.0;
};

struct MoveTable {
  int k_exponent = 2;
  std::vector<Move> moves;
};

// Moves for the 2^k-neighbor grid, k in [2, 5], ordered by heading
// counter-clockwise from +x. Throws DomainError outside that range.
MoveTable neighborhood_moves(int k_exponent);

// Location of a plan's agent at time x. Beyond the plan the agent is at its
// final location (stay) or absent (disappear).
std::optional<Cell> location_at(const Plan& plan, std::size_t x, TargetBehavior behavior);

}  // namespace mapf
