#pragma once

// Test-side ground truth, written independently of the library: conflict
// formulas transcribed as nested loops, random plan/grid/instance builders.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "mapf/conflict.hpp"
#include "mapf/model.hpp"

namespace mapf::testing {

using Rng = std::mt19937_64;

// Location after x actions; past the end the final cell (stay) or nothing.
inline std::optional<Cell> ref_location(const Plan& p, std::size_t x, TargetBehavior behavior) {
  if (x < p.locations.size()) return p.locations[x];
  if (behavior == TargetBehavior::Stay) return p.locations.back();
  return std::nullopt;
}

inline bool ref_same(const std::optional<Cell>& a, const std::optional<Cell>& b) {
  return a && b && *a == *b;
}

// Every witness of one pairwise kind for x in [0, H], H = max plan length,
// in the library's canonical witness form.
inline std::vector<Conflict> ref_pairwise(const Plan& p, const Plan& q, ConflictKind kind,
                                          TargetBehavior behavior) {
  const std::size_t h = std::max(p.locations.size(), q.locations.size()) - 1;
  const int32_t lo = std::min(p.agent, q.agent);
  const int32_t hi = std::max(p.agent, q.agent);
  std::vector<Conflict> out;
  for (std::size_t x = 0; x <= h; ++x) {
    const auto p0 = ref_location(p, x, behavior);
    const auto q0 = ref_location(q, x, behavior);
    if (kind == ConflictKind::Vertex && ref_same(p0, q0)) {
      out.push_back({kind, {lo, hi}, x, {*p0}});
    }
    if (x + 1 > h) continue;
    const auto p1 = ref_location(p, x + 1, behavior);
    const auto q1 = ref_location(q, x + 1, behavior);
    if (kind == ConflictKind::Edge && ref_same(p0, q0) && ref_same(p1, q1)) {
      out.push_back({kind, {lo, hi}, x, {*p0, *p1}});
    }
    if (kind == ConflictKind::Following) {
      if (ref_same(p1, q0)) out.push_back({kind, {p.agent, q.agent}, x, {*p1}});
      if (ref_same(q1, p0)) out.push_back({kind, {q.agent, p.agent}, x, {*q1}});
    }
    if (kind == ConflictKind::Swapping && ref_same(p1, q0) && ref_same(q1, p0)) {
      const Cell first = p.agent < q.agent ? *p0 : *q0;
      const Cell second = p.agent < q.agent ? *q0 : *p0;
      out.push_back({kind, {lo, hi}, x, {first, second}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Cycle witnesses by brute force: every ordered sequence of distinct agents
// (length >= 2, smallest agent first) with seq[m] at x+1 where seq[m+1] was
// at x, cyclically, for x below the longest plan in the sequence.
inline std::vector<Conflict> ref_cycles(const std::vector<Plan>& plans, TargetBehavior behavior) {
  std::size_t makespan = 0;
  for (const auto& p : plans) makespan = std::max(makespan, p.locations.size() - 1);
  std::vector<Conflict> out;
  const std::size_t k = plans.size();
  for (std::size_t x = 0; x < makespan; ++x) {
    auto rotates = [&](std::size_t a, std::size_t b) {
      return ref_same(ref_location(plans[a], x + 1, behavior), ref_location(plans[b], x, behavior));
    };
    std::vector<std::size_t> seq;
    std::vector<bool> used(k, false);
    auto extend = [&](auto&& self) -> void {
      const bool in_horizon = std::any_of(seq.begin(), seq.end(), [&](std::size_t j) {
        return plans[j].locations.size() - 1 > x;
      });
      if (seq.size() >= 2 && in_horizon && rotates(seq.back(), seq.front())) {
        Conflict c{ConflictKind::Cycle, {}, x, {}};
        for (std::size_t j : seq) {
          c.agents.push_back(plans[j].agent);
          c.vertices.push_back(*ref_location(plans[j], x, behavior));
        }
        out.push_back(c);
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (used[j] || plans[j].agent < plans[seq.front()].agent) continue;
        if (!rotates(seq.back(), j)) continue;
        used[j] = true;
        seq.push_back(j);
        self(self);
        seq.pop_back();
        used[j] = false;
      }
    };
    for (std::size_t s = 0; s < k; ++s) {
      seq = {s};
      used.assign(k, false);
      used[s] = true;
      extend(extend);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Conflict> of_kind(const std::vector<Conflict>& all, ConflictKind kind) {
  std::vector<Conflict> out;
  for (const auto& c : all) {
    if (c.kind == kind) out.push_back(c);
  }
  return out;
}

inline Grid random_grid(Rng& rng, int32_t max_w, int32_t max_h, double block_p) {
  std::uniform_int_distribution<int32_t> wd(1, max_w);
  std::uniform_int_distribution<int32_t> hd(1, max_h);
  const int32_t w = wd(rng);
  const int32_t h = hd(rng);
  std::bernoulli_distribution blocked(block_p);
  std::vector<uint8_t> passable(static_cast<std::size_t>(w * h));
  for (auto& c : passable) c = blocked(rng) ? 0 : 1;
  return Grid(w, h, std::move(passable));
}

inline std::vector<Cell> passable_cells(const Grid& g) {
  std::vector<Cell> out;
  for (int32_t y = 0; y < g.height(); ++y) {
    for (int32_t x = 0; x < g.width(); ++x) {
      if (g.passable(Cell{x, y})) out.push_back({x, y});
    }
  }
  return out;
}

// Random legal walk of `length` actions from a random passable cell.
inline Plan random_walk(Rng& rng, const Grid& g, int32_t agent, std::size_t length) {
  const auto cells = passable_cells(g);
  Plan p;
  p.agent = agent;
  p.extent = extent_of(g);
  p.locations.push_back(cells[std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng)]);
  for (std::size_t i = 0; i < length; ++i) {
    const Cell c = p.locations.back();
    std::vector<Cell> options{c};
    for (Cell n : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1}, Cell{c.x, c.y - 1}}) {
      if (g.passable(n)) options.push_back(n);
    }
    p.locations.push_back(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
  }
  return p;
}

inline std::vector<int32_t> ref_bfs(const Grid& g, Cell from) {
  std::vector<int32_t> d(g.cell_count(), -1);
  std::vector<Cell> frontier{from};
  d[static_cast<std::size_t>(g.index(from))] = 0;
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const Cell c = frontier[i];
    for (Cell n : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1}, Cell{c.x, c.y - 1}}) {
      if (!g.passable(n) || d[static_cast<std::size_t>(g.index(n))] >= 0) continue;
      d[static_cast<std::size_t>(g.index(n))] = d[static_cast<std::size_t>(g.index(c))] + 1;
      frontier.push_back(n);
    }
  }
  return d;
}

// Random instance with k agents whose endpoints are connected, or nullopt when
// the draw does not admit one.
inline std::optional<Instance> random_instance(Rng& rng, const Grid& g, std::size_t k) {
  auto cells = passable_cells(g);
  if (cells.size() < k) return std::nullopt;
  std::shuffle(cells.begin(), cells.end(), rng);
  std::vector<Cell> sources(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(k));
  std::shuffle(cells.begin(), cells.end(), rng);
  std::vector<Cell> targets(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    if (ref_bfs(g, sources[i])[static_cast<std::size_t>(g.index(targets[i]))] < 0) {
      return std::nullopt;
    }
  }
  return Instance(g, sources, targets);
}

inline Plan plan_of(int32_t agent, std::vector<Cell> cells) {
  return Plan{agent, std::move(cells), {}};
}

}  // namespace mapf::testing
