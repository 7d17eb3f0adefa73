#include "mapf/oracle.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <unordered_map>

#include "mapf/errors.hpp"
#include "mapf/objective.hpp"

namespace mapf {

std::size_t default_oracle_horizon(const Instance& instance) {
  return instance.grid().passable_count() + instance.agents();
}

namespace {

// Dynamic program over joint configurations, one layer per time step.
//
// Per agent the state is one of
//   - a vertex, plan still running;
//   - ended: the plan is over (parked at the target under stay, gone under
//     disappear);
//   - parked-running: at the target after waiting there, so the plan may not
//     end here (that would leave a trailing wait, which is not canonical) and
//     must leave and come back first.
// A running agent may end whenever it has just arrived at its target. A step
// costs one per agent still running, so the cost of a layer-x configuration
// in which every plan ends is the sum of canonical plan lengths. Conflicts
// are checked only for steps in which at least one involved agent is still
// running, the same horizon the pairwise and cycle detectors use.
class JointDp {
 public:
  JointDp(const Instance& instance, const SemanticsProfile& profile)
      : instance_(instance),
        profile_(profile),
        grid_(instance.grid()),
        k_(instance.agents()),
        ended_(static_cast<uint64_t>(grid_.cell_count())),
        parked_(ended_ + 1),
        base_(ended_ + 2) {
    uint64_t room = std::numeric_limits<uint64_t>::max();
    for (std::size_t i = 0; i < k_; ++i) {
      if (room < base_) throw CapacityError("instance too large for the exhaustive oracle");
      room /= base_;
    }
    dist_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) dist_[i] = distance_map(grid_, instance.target(i));
  }

  OracleResult run(std::size_t horizon) {
    OracleResult result;
    result.horizon = horizon;
    std::vector<uint64_t> start(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      start[i] = static_cast<uint64_t>(grid_.index(instance_.source(i)));
      if (dist_[i][start[i]] < 0) return result;
    }
    const bool soc = profile_.objective() == Objective::SumOfCosts;

    layers_.assign(1, {});
    layers_[0].emplace(encode(start), Node{0, 0});
    std::optional<std::size_t> best;
    std::size_t best_layer = 0;
    uint64_t best_key = 0;

    for (std::size_t x = 0; x <= horizon && !layers_[x].empty(); ++x) {
      std::vector<uint64_t> state(k_);
      for (const auto& [key, node] : layers_[x]) {
        decode(key, state);
        if (can_all_end(state) && (!best || node.cost < *best)) {
          best = node.cost;
          best_layer = x;
          best_key = key;
        }
      }
      if (best && !soc) break;
      if (x == horizon) break;

      layers_.emplace_back();
      auto& next = layers_[x + 1];
      std::vector<uint64_t> choice(k_);
      for (const auto& [key, node] : layers_[x]) {
        decode(key, state);
        auto keep = [&](const std::vector<uint64_t>& nxt) {
          std::size_t running = 0;
          for (std::size_t i = 0; i < k_; ++i) running += state[i] != ended_ && nxt[i] != ended_;
          const std::size_t cost = node.cost + running;
          if (best && cost + remaining(nxt) >= *best) return;
          auto [it, fresh] = next.try_emplace(encode(nxt), Node{cost, key});
          if (!fresh && cost < it->second.cost) it->second = Node{cost, key};
        };
        expand(state, choice, 0, keep);
      }
    }
    if (!best) return result;

    result.found = true;
    result.cost = soc ? *best : best_layer;
    result.witness = rebuild(best_layer, best_key);
    return result;
  }

 private:
  struct Node {
    std::size_t cost;
    uint64_t parent;
  };

  int64_t target(std::size_t i) const { return grid_.index(instance_.target(i)); }

  uint64_t encode(const std::vector<uint64_t>& state) const {
    uint64_t key = 0;
    for (uint64_t v : state) key = key * base_ + v;
    return key;
  }

  void decode(uint64_t key, std::vector<uint64_t>& state) const {
    for (std::size_t i = k_; i-- > 0;) {
      state[i] = key % base_;
      key /= base_;
    }
  }

  // Vertex occupied now, or -1 when absent.
  int64_t where(const std::vector<uint64_t>& state, std::size_t i) const {
    if (state[i] == parked_) return target(i);
    if (state[i] != ended_) return static_cast<int64_t>(state[i]);
    return profile_.target_behavior() == TargetBehavior::Stay ? target(i) : -1;
  }

  bool can_all_end(const std::vector<uint64_t>& state) const {
    for (std::size_t i = 0; i < k_; ++i) {
      if (state[i] != ended_ && static_cast<int64_t>(state[i]) != target(i)) return false;
    }
    return true;
  }

  // Admissible bound on the cost still to pay from a configuration.
  std::size_t remaining(const std::vector<uint64_t>& state) const {
    std::size_t h = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      if (state[i] == parked_) h += 2;
      else if (state[i] != ended_) h += static_cast<std::size_t>(dist_[i][state[i]]);
    }
    return h;
  }

  bool pair_ok(int64_t a0, int64_t a1, int64_t b0, int64_t b1) const {
    auto same = [](int64_t u, int64_t v) { return u >= 0 && u == v; };
    if (profile_.forbids(ConflictKind::Vertex) && same(a1, b1)) return false;
    if (profile_.forbids(ConflictKind::Edge) && same(a0, b0) && same(a1, b1)) return false;
    if (profile_.forbids(ConflictKind::Following) && (same(a1, b0) || same(b1, a0))) return false;
    if (profile_.forbids(ConflictKind::Swapping) && same(a1, b0) && same(b1, a0)) return false;
    return true;
  }

  // An agent is running during the step unless it had ended or ends now.
  bool running(const std::vector<uint64_t>& state, const std::vector<uint64_t>& choice,
               std::size_t i) const {
    return state[i] != ended_ && choice[i] != ended_;
  }

  bool step_ok(const std::vector<uint64_t>& state, const std::vector<uint64_t>& choice,
               std::size_t i) const {
    for (std::size_t j = 0; j < i; ++j) {
      if (!running(state, choice, i) && !running(state, choice, j)) continue;
      if (!pair_ok(where(state, i), where(choice, i), where(state, j), where(choice, j))) {
        return false;
      }
    }
    return true;
  }

  // Any rotation (agent j moves into the vertex agent l held) that closes a
  // cycle through a running agent.
  bool has_running_cycle(const std::vector<uint64_t>& state,
                         const std::vector<uint64_t>& choice) const {
    std::vector<std::vector<std::size_t>> adj(k_);
    for (std::size_t j = 0; j < k_; ++j) {
      const int64_t dest = where(choice, j);
      if (dest < 0 || where(state, j) < 0) continue;
      for (std::size_t l = 0; l < k_; ++l) {
        if (l != j && where(state, l) == dest) adj[j].push_back(l);
      }
    }
    for (std::size_t a = 0; a < k_; ++a) {
      if (!running(state, choice, a)) continue;
      std::vector<bool> reached(k_, false);
      std::vector<std::size_t> stack(adj[a].begin(), adj[a].end());
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        if (u == a) return true;
        if (reached[u]) continue;
        reached[u] = true;
        stack.insert(stack.end(), adj[u].begin(), adj[u].end());
      }
    }
    return false;
  }

  template <typename Emit>
  void expand(const std::vector<uint64_t>& state, std::vector<uint64_t>& choice, std::size_t i,
              Emit& emit) {
    if (i == k_) {
      if (!profile_.forbids(ConflictKind::Cycle) || !has_running_cycle(state, choice)) emit(choice);
      return;
    }
    std::array<uint64_t, 6> options{};
    std::size_t count = 0;
    if (state[i] == ended_) {
      options[count++] = ended_;
    } else {
      const auto v = static_cast<VertexId>(where(state, i));
      const bool at_target = v == target(i);
      if (at_target && state[i] != parked_) options[count++] = ended_;
      options[count++] = at_target ? parked_ : static_cast<uint64_t>(v);
      std::array<VertexId, 4> nbrs{};
      const int n = grid_.neighbors(v, nbrs);
      for (int m = 0; m < n; ++m) options[count++] = static_cast<uint64_t>(nbrs[static_cast<std::size_t>(m)]);
    }
    for (std::size_t o = 0; o < count; ++o) {
      choice[i] = options[o];
      if (step_ok(state, choice, i)) expand(state, choice, i + 1, emit);
    }
  }

  Solution rebuild(std::size_t last_layer, uint64_t last_key) const {
    std::vector<std::vector<uint64_t>> states(last_layer + 1, std::vector<uint64_t>(k_));
    uint64_t key = last_key;
    for (std::size_t x = last_layer + 1; x-- > 0;) {
      decode(key, states[x]);
      key = layers_[x].at(key).parent;
    }
    Solution s;
    for (std::size_t i = 0; i < k_; ++i) {
      Plan p{static_cast<int32_t>(i), {}, extent_of(grid_)};
      for (std::size_t x = 0; x <= last_layer && states[x][i] != ended_; ++x) {
        p.locations.push_back(grid_.cell(static_cast<VertexId>(where(states[x], i))));
      }
      s.plans.push_back(std::move(p));
    }
    return s;
  }

  const Instance& instance_;
  const SemanticsProfile& profile_;
  const Grid& grid_;
  std::size_t k_;
  uint64_t ended_;
  uint64_t parked_;
  uint64_t base_;
  std::vector<std::vector<int32_t>> dist_;
  std::vector<std::unordered_map<uint64_t, Node>> layers_;
};

}  // namespace

OracleResult brute_force_optimal(const Instance& instance, const SemanticsProfile& profile,
                                 std::optional<std::size_t> horizon) {
  return JointDp(instance, profile).run(horizon.value_or(default_oracle_horizon(instance)));
}

}  // namespace mapf
