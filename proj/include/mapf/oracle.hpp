#pragma once

// Exhaustive optimal solver for tiny instances under any semantics profile.
// Ground truth for solver and validator tests; not meant to scale (think
// k <= 3, |V| <= 16, horizon <= 8).

#include <cstddef>
#include <optional>

#include "mapf/model.hpp"

namespace mapf {

struct OracleResult {
  // False means no valid joint plan within the horizon, which does not prove
  // the instance unsolvable.
  bool found = false;
  std::size_t cost = 0;
  Solution witness;
  std::size_t horizon = 0;
};

// |V| + k, with |V| the number of passable cells.
std::size_t default_oracle_horizon(const Instance& instance);

// Minimum objective value over all joint plans whose single-agent plans are
// canonical, at most `horizon` actions long, and free of every conflict the
// profile forbids. Plans are enumerated in order of increasing slack over
// each agent's shortest distance, so the first valid joint plan found at a
// given slack is optimal.
OracleResult brute_force_optimal(const Instance& instance, const SemanticsProfile& profile,
                                 std::optional<std::size_t> horizon = std::nullopt);

}  // namespace mapf
