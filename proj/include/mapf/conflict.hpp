#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "mapf/model.hpp"

namespace mapf {

// A conflict witness. Field conventions per kind:
//   vertex    agents ascending, vertices = {v}
//   edge      agents ascending, vertices = {v at time, v at time + 1}
//   following agents = {follower, leader}, vertices = {vertex entered at time + 1}
//   swapping  agents ascending, vertices = {location of agents[0], of agents[1]} at time
//   cycle     agents in rotation order starting from the smallest index, each
//             moving into the next one's vertex; vertices = their locations at time
struct Conflict {
  ConflictKind kind = ConflictKind::Vertex;
  std::vector<int32_t> agents;
  std::size_t time = 0;
  std::vector<Cell> vertices;

  friend bool operator==(const Conflict&, const Conflict&) = default;
  friend std::strong_ordering operator<=>(const Conflict& a, const Conflict& b);
};

std::ostream& operator<<(std::ostream& os, const Conflict& c);

// Every vertex, edge, following and swapping witness between two plans for
// x in [0, max(|p1|, |p2|)], sorted by time. `kinds` entries other than these
// four are ignored. Throws GridMismatchError when both plans carry different
// grid extents.
std::vector<Conflict> pairwise_conflicts(const Plan& p1, const Plan& p2, ConflictSet kinds,
                                         TargetBehavior behavior);

// Early-exit form of pairwise_conflicts: true iff the list would be non-empty.
bool has_pairwise_conflict(const Plan& p1, const Plan& p2, ConflictSet kinds,
                           TargetBehavior behavior);

// Rotating-cycle witnesses of two or more agents at every time step x below
// the longest plan among the cycle's agents. Each 2-cycle is reported twice:
// as a cycle and as a swap.
std::vector<Conflict> cycle_conflicts(const Solution& solution, TargetBehavior behavior);

// All conflicts forbidden by the profile, deduplicated and sorted. Empty iff
// the solution is conflict-free under the profile.
std::vector<Conflict> solution_conflicts(const Solution& solution, const SemanticsProfile& profile);

}  // namespace mapf
