// Conflict-based search for sum-of-costs optimal classical MAPF with
// stay-at-target agents. High level: best-first over constraint-tree nodes by
// (cost, conflict count, creation order). Low level: space-time A* under the
// agent's accumulated constraints.

#include <algorithm>
#include <chrono>
#include <memory>
#include <queue>
#include <unordered_map>

#include "low_level.hpp"
#include "mapf/errors.hpp"
#include "mapf/kernels/sequence_match.hpp"
#include "mapf/objective.hpp"
#include "mapf/solve.hpp"

namespace mapf {

namespace {

using detail::Path;

struct CtConstraint {
  int32_t agent = 0;
  bool edge = false;
  VertexId from = 0;
  VertexId to = 0;
  std::size_t time = 0;
};

struct PairConflict {
  bool swap = false;
  int32_t a = 0;
  int32_t b = 0;
  std::size_t time = 0;
  // Vertex conflict: from == to == the shared vertex. Swap: agent a moves
  // from -> to while b moves to -> from.
  VertexId from = 0;
  VertexId to = 0;
  // All vertex and swap witnesses between a and b.
  std::size_t witnesses = 0;
};

enum class Cardinality : uint8_t { Cardinal, SemiCardinal, NonCardinal };

struct CtNode {
  std::shared_ptr<const CtNode> parent;
  CtConstraint added{};
  bool has_constraint = false;
  std::vector<std::shared_ptr<const Path>> paths;
  std::vector<PairConflict> conflicts;  // earliest witness per conflicting pair
  std::size_t num_conflicts = 0;
  std::size_t cost = 0;
  uint64_t id = 0;
};

using NodePtr = std::shared_ptr<CtNode>;

struct NodeOrder {
  bool operator()(const NodePtr& x, const NodePtr& y) const {
    if (x->cost != y->cost) return x->cost > y->cost;
    if (x->num_conflicts != y->num_conflicts) return x->num_conflicts > y->num_conflicts;
    return x->id > y->id;
  }
};

std::size_t path_cost(const Path& p) { return p.size() - 1; }

class CbsSearch {
 public:
  CbsSearch(const Instance& instance, const SemanticsProfile& profile, const SolverBudget& budget,
            const CbsOptions& options)
      : instance_(instance),
        profile_(profile),
        grid_(instance.grid()),
        budget_(budget),
        options_(options),
        k_(instance.agents()) {
    for (std::size_t i = 0; i < k_; ++i) {
      sources_.push_back(grid_.index(instance.source(i)));
      targets_.push_back(grid_.index(instance.target(i)));
      heuristics_.push_back(detail::heuristic_to(grid_, targets_.back()));
    }
  }

  SolveResult run() {
    const auto started = SolverBudget::Clock::now();
    SolveResult result = search();
    result.stats = stats_;
    result.stats.runtime_ms =
        std::chrono::duration<double, std::milli>(SolverBudget::Clock::now() - started).count();
    return result;
  }

 private:
  SolveResult search() {
    SolveResult result;
    if (options_.feasibility_check_states > 0) {
      auto reachable = joint_goal_reachable(instance_, profile_, options_.feasibility_check_states);
      if (reachable && !*reachable) {
        result.status = SolveStatus::Unsolvable;
        return result;
      }
    }

    auto root = std::make_shared<CtNode>();
    root->paths.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      detail::ConstraintTable table(grid_.cell_count());
      detail::ConflictAvoidanceTable cat;
      if (options_.conflict_avoidance) {
        for (std::size_t j = 0; j < i; ++j) cat.add_path(*root->paths[j]);
      }
      auto low = low_level(i, table, options_.conflict_avoidance ? &cat : nullptr);
      if (low.status == PathStatus::Timeout) return timeout();
      if (low.status == PathStatus::NoPath) {
        result.status = SolveStatus::Unsolvable;
        return result;
      }
      root->paths[i] = std::make_shared<const Path>(std::move(low.path));
    }
    for (const auto& p : root->paths) root->cost += path_cost(*p);
    detect_all(*root);
    root->id = next_id_++;
    ++stats_.high_level_generated;

    std::priority_queue<NodePtr, std::vector<NodePtr>, NodeOrder> open;
    open.push(root);
    while (!open.empty()) {
      if (budget_.expired() || budget_.nodes_exhausted(stats_.high_level_expanded)) {
        return timeout();
      }
      NodePtr node = open.top();
      open.pop();
      ++stats_.high_level_expanded;

      bool expanded = false;
      while (!expanded) {
        if (node->conflicts.empty()) return solved(*node);
        const PairConflict conflict = choose_conflict(*node);
        std::array<NodePtr, 2> children;
        bool adopted = false;
        for (int side = 0; side < 2 && !adopted; ++side) {
          auto child = make_child(node, conflict, side);
          if (timed_out_) return timeout();
          if (!child) continue;
          if (options_.bypass && child->cost == node->cost &&
              child->num_conflicts < node->num_conflicts) {
            // Keep the node's constraints, take the better path.
            node->paths = std::move(child->paths);
            node->conflicts = std::move(child->conflicts);
            node->num_conflicts = child->num_conflicts;
            ++stats_.bypasses;
            adopted = true;
          } else {
            children[static_cast<std::size_t>(side)] = std::move(child);
          }
        }
        if (adopted) {
          if (budget_.expired()) return timeout();
          continue;
        }
        for (auto& child : children) {
          if (!child) continue;
          child->id = next_id_++;
          ++stats_.high_level_generated;
          open.push(std::move(child));
        }
        expanded = true;
      }
    }
    result.status = SolveStatus::Unsolvable;
    return result;
  }

  SolveResult timeout() {
    SolveResult r;
    r.status = SolveStatus::Timeout;
    return r;
  }

  SolveResult solved(const CtNode& node) {
    SolveResult r;
    r.status = SolveStatus::Solved;
    for (std::size_t i = 0; i < k_; ++i) {
      r.solution.plans.push_back(detail::to_plan(grid_, static_cast<int32_t>(i), *node.paths[i]));
    }
    r.cost = sum_of_costs(r.solution, TargetBehavior::Stay);
    return r;
  }

  detail::LowLevelResult low_level(std::size_t agent, const detail::ConstraintTable& table,
                                   const detail::ConflictAvoidanceTable* cat) {
    SolverBudget inner = budget_;
    inner.node_limit.reset();
    auto low = detail::astar(grid_, sources_[agent], targets_[agent], heuristics_[agent], table,
                             cat, std::nullopt, inner);
    stats_.low_level_expanded += low.expanded;
    return low;
  }

  detail::ConstraintTable constraints_for(const CtNode* node, std::size_t agent) const {
    detail::ConstraintTable table(grid_.cell_count());
    for (; node != nullptr; node = node->parent.get()) {
      if (!node->has_constraint || node->added.agent != static_cast<int32_t>(agent)) continue;
      const auto& c = node->added;
      if (c.edge) {
        table.add_edge(c.from, c.to, c.time);
      } else {
        table.add_vertex(c.from, c.time);
      }
    }
    return table;
  }

  // Pads both paths with their final vertex to a common horizon.
  std::optional<PairConflict> detect_pair(std::size_t i, std::size_t j, const Path& pi,
                                          const Path& pj) {
    const std::size_t h = std::max(pi.size(), pj.size());
    auto pad = [h](const Path& p, std::vector<int32_t>& out) {
      out.assign(p.begin(), p.end());
      out.resize(h, p.back());
    };
    pad(pi, scratch_a_);
    pad(pj, scratch_b_);
    std::span<const int32_t> a(scratch_a_);
    std::span<const int32_t> b(scratch_b_);

    const std::ptrdiff_t tv = kernels::find_first_equal(a, b);
    std::ptrdiff_t ts = -1;
    std::size_t swaps = 0;
    if (h > 1) {
      const std::size_t n = h - 1;
      ts = kernels::find_first_equal2(a.subspan(1), b.first(n), b.subspan(1), a.first(n));
      if (ts >= 0) {
        for (std::size_t x = static_cast<std::size_t>(ts); x < n; ++x) {
          swaps += (a[x + 1] == b[x] && b[x + 1] == a[x]) ? 1 : 0;
        }
      }
    }
    if (tv < 0 && ts < 0) return std::nullopt;

    PairConflict c;
    c.a = static_cast<int32_t>(i);
    c.b = static_cast<int32_t>(j);
    c.witnesses = (tv >= 0 ? kernels::count_equal(a, b) : 0) + swaps;
    if (tv >= 0 && (ts < 0 || tv <= ts)) {
      c.time = static_cast<std::size_t>(tv);
      c.from = c.to = a[static_cast<std::size_t>(tv)];
    } else {
      c.swap = true;
      c.time = static_cast<std::size_t>(ts);
      c.from = a[static_cast<std::size_t>(ts)];
      c.to = a[static_cast<std::size_t>(ts) + 1];
    }
    return c;
  }

  void detect_all(CtNode& node) {
    node.conflicts.clear();
    node.num_conflicts = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = i + 1; j < k_; ++j) {
        if (auto c = detect_pair(i, j, *node.paths[i], *node.paths[j])) {
          node.num_conflicts += c->witnesses;
          node.conflicts.push_back(*c);
        }
      }
    }
  }

  // Re-detects only the pairs involving `agent`.
  void update_conflicts(CtNode& node, std::size_t agent) {
    const auto id = static_cast<int32_t>(agent);
    std::erase_if(node.conflicts, [&](const PairConflict& c) {
      if (c.a != id && c.b != id) return false;
      node.num_conflicts -= c.witnesses;
      return true;
    });
    for (std::size_t j = 0; j < k_; ++j) {
      if (j == agent) continue;
      const std::size_t lo = std::min(j, agent);
      const std::size_t hi = std::max(j, agent);
      if (auto c = detect_pair(lo, hi, *node.paths[lo], *node.paths[hi])) {
        node.num_conflicts += c->witnesses;
        node.conflicts.push_back(*c);
      }
    }
  }

  // Whether resolving the conflict for `agent` must raise that agent's cost.
  bool forced_for(const CtNode& node, const PairConflict& c, int32_t agent,
                  std::unordered_map<int32_t, std::vector<std::size_t>>& mdds) {
    const auto a = static_cast<std::size_t>(agent);
    const Path& path = *node.paths[a];
    const std::size_t cost = path_cost(path);
    if (!c.swap && c.time >= cost) return true;  // parked at (or arriving on) its target
    auto it = mdds.find(agent);
    if (it == mdds.end()) {
      auto table = constraints_for(&node, a);
      it = mdds.emplace(agent, detail::mdd_widths(grid_, sources_[a], targets_[a], cost,
                                                  heuristics_[a], table))
               .first;
    }
    const auto& widths = it->second;
    if (widths.empty()) return false;
    if (c.swap) {
      return c.time + 1 <= cost && widths[c.time] == 1 && widths[c.time + 1] == 1;
    }
    return widths[c.time] == 1;
  }

  PairConflict choose_conflict(const CtNode& node) {
    auto earlier = [](const PairConflict& x, const PairConflict& y) {
      if (x.time != y.time) return x.time < y.time;
      if (x.swap != y.swap) return !x.swap;
      if (x.a != y.a) return x.a < y.a;
      return x.b < y.b;
    };
    std::vector<PairConflict> ordered = node.conflicts;
    std::sort(ordered.begin(), ordered.end(), earlier);
    if (!options_.prioritize_conflicts) return ordered.front();

    std::unordered_map<int32_t, std::vector<std::size_t>> mdds;
    std::optional<PairConflict> semi;
    for (const auto& c : ordered) {
      const bool fa = forced_for(node, c, c.a, mdds);
      const bool fb = forced_for(node, c, c.b, mdds);
      if (fa && fb) return c;
      if ((fa || fb) && !semi) semi = c;
    }
    return semi ? *semi : ordered.front();
  }

  // Child adding the side-th constraint of the split; nullptr if the
  // constrained agent has no plan. Sets timed_out_ on budget expiry.
  NodePtr make_child(const NodePtr& parent, const PairConflict& c, int side) {
    CtConstraint con;
    con.time = c.time;
    if (side == 0) {
      con.agent = c.a;
      con.edge = c.swap;
      con.from = c.from;
      con.to = c.to;
    } else {
      con.agent = c.b;
      con.edge = c.swap;
      con.from = c.swap ? c.to : c.from;
      con.to = c.swap ? c.from : c.to;
    }
    auto child = std::make_shared<CtNode>();
    child->parent = parent;
    child->added = con;
    child->has_constraint = true;
    child->paths = parent->paths;
    child->conflicts = parent->conflicts;
    child->num_conflicts = parent->num_conflicts;

    const auto agent = static_cast<std::size_t>(con.agent);
    auto table = constraints_for(child.get(), agent);
    detail::ConflictAvoidanceTable cat;
    if (options_.conflict_avoidance) {
      for (std::size_t j = 0; j < k_; ++j) {
        if (j != agent) cat.add_path(*child->paths[j]);
      }
    }
    auto low = low_level(agent, table, options_.conflict_avoidance ? &cat : nullptr);
    if (low.status == PathStatus::Timeout) {
      timed_out_ = true;
      return nullptr;
    }
    if (low.status == PathStatus::NoPath) return nullptr;
    child->cost = parent->cost - path_cost(*parent->paths[agent]) + path_cost(low.path);
    child->paths[agent] = std::make_shared<const Path>(std::move(low.path));
    update_conflicts(*child, agent);
    return child;
  }

  const Instance& instance_;
  const SemanticsProfile& profile_;
  const Grid& grid_;
  const SolverBudget& budget_;
  CbsOptions options_;
  std::size_t k_;
  std::vector<VertexId> sources_;
  std::vector<VertexId> targets_;
  std::vector<std::vector<int32_t>> heuristics_;
  std::vector<int32_t> scratch_a_;
  std::vector<int32_t> scratch_b_;
  SolveStats stats_;
  uint64_t next_id_ = 0;
  bool timed_out_ = false;
};

}  // namespace

SolveResult cbs(const Instance& instance, const SemanticsProfile& profile,
                const SolverBudget& budget, const CbsOptions& options) {
  const bool supported = profile.forbids(ConflictKind::Vertex) &&
                         profile.forbids(ConflictKind::Swapping) &&
                         !profile.forbids(ConflictKind::Following) &&
                         !profile.forbids(ConflictKind::Cycle) &&
                         profile.target_behavior() == TargetBehavior::Stay &&
                         profile.objective() == Objective::SumOfCosts;
  if (!supported) {
    throw DomainError("cbs requires vertex, edge and swapping forbidden, following and cycle "
                      "allowed, stay at target and sum of costs; got " +
                      to_string(profile.forbidden()));
  }
  return CbsSearch(instance, profile, budget, options).run();
}

}  // namespace mapf
