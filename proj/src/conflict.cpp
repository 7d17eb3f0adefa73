#include "mapf/conflict.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "mapf/errors.hpp"
#include "mapf/kernels/sequence_match.hpp"

namespace mapf {

std::strong_ordering operator<=>(const Conflict& a, const Conflict& b) {
  if (auto c = a.time <=> b.time; c != 0) return c;
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.agents <=> b.agents; c != 0) return c;
  return a.vertices <=> b.vertices;
}

std::ostream& operator<<(std::ostream& os, const Conflict& c) {
  os << to_string(c.kind) << " t=" << c.time << " agents=";
  for (std::size_t i = 0; i < c.agents.size(); ++i) os << (i ? "," : "") << c.agents[i];
  os << " at";
  for (const Cell& v : c.vertices) os << ' ' << v;
  return os;
}

namespace {

constexpr int32_t kAbsentFirst = -1;
constexpr int32_t kAbsentSecond = -2;

void check_extents(const Plan& p1, const Plan& p2) {
  if (p1.extent.specified() && p2.extent.specified() && p1.extent != p2.extent) {
    throw GridMismatchError("plans of agents " + std::to_string(p1.agent) + " and " +
                            std::to_string(p2.agent) + " refer to grids of different size");
  }
}

// Both plans' locations over [0, horizon] as integers that are equal iff the
// cells are equal; absent positions get distinct negative sentinels so they
// never match.
struct EncodedPair {
  std::vector<int32_t> first;
  std::vector<int32_t> second;
  std::size_t horizon = 0;
};

EncodedPair encode(const Plan& p1, const Plan& p2, TargetBehavior behavior) {
  EncodedPair out;
  out.horizon = std::max(p1.length(), p2.length());
  int64_t min_x = std::numeric_limits<int32_t>::max();
  int64_t min_y = min_x;
  int64_t max_x = std::numeric_limits<int32_t>::min();
  for (const Plan* p : {&p1, &p2}) {
    for (const Cell& c : p->locations) {
      min_x = std::min<int64_t>(min_x, c.x);
      max_x = std::max<int64_t>(max_x, c.x);
      min_y = std::min<int64_t>(min_y, c.y);
    }
  }
  const int64_t stride = max_x - min_x + 1;
  auto fill = [&](const Plan& p, std::vector<int32_t>& seq, int32_t absent) {
    seq.resize(out.horizon + 1);
    for (std::size_t x = 0; x <= out.horizon; ++x) {
      const auto loc = location_at(p, x, behavior);
      seq[x] = loc ? static_cast<int32_t>((loc->y - min_y) * stride + (loc->x - min_x)) : absent;
    }
  };
  fill(p1, out.first, kAbsentFirst);
  fill(p2, out.second, kAbsentSecond);
  return out;
}

std::vector<int32_t> ascending(int32_t a, int32_t b) {
  return a < b ? std::vector<int32_t>{a, b} : std::vector<int32_t>{b, a};
}

}  // namespace

std::vector<Conflict> pairwise_conflicts(const Plan& p1, const Plan& p2, ConflictSet kinds,
                                         TargetBehavior behavior) {
  check_extents(p1, p2);
  std::vector<Conflict> out;
  if (p1.locations.empty() || p2.locations.empty()) return out;

  const EncodedPair enc = encode(p1, p2, behavior);
  const std::size_t h = enc.horizon;
  std::span<const int32_t> a(enc.first);
  std::span<const int32_t> b(enc.second);

  // same[x]: a[x] == b[x];  fwd[x]: a[x+1] == b[x];  back[x]: b[x+1] == a[x].
  std::vector<uint8_t> same(h + 1, 0);
  std::vector<uint8_t> fwd(h, 0);
  std::vector<uint8_t> back(h, 0);
  kernels::equal_mask(a, b, same);
  if (h > 0) {
    kernels::equal_mask(a.subspan(1), b.first(h), fwd);
    kernels::equal_mask(b.subspan(1), a.first(h), back);
  }

  auto at = [&](const Plan& p, std::size_t x) { return *location_at(p, x, behavior); };
  const bool want_vertex = kinds.contains(ConflictKind::Vertex);
  const bool want_edge = kinds.contains(ConflictKind::Edge);
  const bool want_following = kinds.contains(ConflictKind::Following);
  const bool want_swapping = kinds.contains(ConflictKind::Swapping);
  const bool first_is_lower = p1.agent < p2.agent;

  for (std::size_t x = 0; x <= h; ++x) {
    if (want_vertex && same[x]) {
      out.push_back({ConflictKind::Vertex, ascending(p1.agent, p2.agent), x, {at(p1, x)}});
    }
    if (x == h) break;
    if (want_edge && same[x] && same[x + 1]) {
      out.push_back(
          {ConflictKind::Edge, ascending(p1.agent, p2.agent), x, {at(p1, x), at(p1, x + 1)}});
    }
    if (want_following && fwd[x]) {
      out.push_back({ConflictKind::Following, {p1.agent, p2.agent}, x, {at(p1, x + 1)}});
    }
    if (want_following && back[x]) {
      out.push_back({ConflictKind::Following, {p2.agent, p1.agent}, x, {at(p2, x + 1)}});
    }
    if (want_swapping && fwd[x] && back[x]) {
      const Cell lo = first_is_lower ? at(p1, x) : at(p2, x);
      const Cell hi = first_is_lower ? at(p2, x) : at(p1, x);
      out.push_back({ConflictKind::Swapping, ascending(p1.agent, p2.agent), x, {lo, hi}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool has_pairwise_conflict(const Plan& p1, const Plan& p2, ConflictSet kinds,
                           TargetBehavior behavior) {
  check_extents(p1, p2);
  if (p1.locations.empty() || p2.locations.empty()) return false;
  const EncodedPair enc = encode(p1, p2, behavior);
  const std::size_t h = enc.horizon;
  std::span<const int32_t> a(enc.first);
  std::span<const int32_t> b(enc.second);

  if (kinds.contains(ConflictKind::Vertex) && kernels::find_first_equal(a, b) >= 0) return true;
  if (h == 0) return false;
  if (kinds.contains(ConflictKind::Edge) &&
      kernels::find_first_equal2(a.first(h), b.first(h), a.subspan(1), b.subspan(1)) >= 0) {
    return true;
  }
  if (kinds.contains(ConflictKind::Following) &&
      (kernels::find_first_equal(a.subspan(1), b.first(h)) >= 0 ||
       kernels::find_first_equal(b.subspan(1), a.first(h)) >= 0)) {
    return true;
  }
  if (kinds.contains(ConflictKind::Swapping) &&
      kernels::find_first_equal2(a.subspan(1), b.first(h), b.subspan(1), a.first(h)) >= 0) {
    return true;
  }
  return false;
}

namespace {

// Enumerates elementary cycles (length >= 2) of a small directed graph given
// as adjacency lists. Each cycle is emitted once, rotated so that its
// smallest node comes first.
class CycleEnumerator {
 public:
  explicit CycleEnumerator(const std::vector<std::vector<std::size_t>>& adj) : adj_(adj) {}

  template <typename Emit>
  void run(Emit&& emit) {
    on_path_.assign(adj_.size(), false);
    for (std::size_t s = 0; s < adj_.size(); ++s) {
      start_ = s;
      path_.clear();
      dfs(s, emit);
    }
  }

 private:
  template <typename Emit>
  void dfs(std::size_t v, Emit& emit) {
    path_.push_back(v);
    on_path_[v] = true;
    for (std::size_t w : adj_[v]) {
      if (w == start_) {
        if (path_.size() >= 2) emit(path_);
      } else if (w > start_ && !on_path_[w]) {
        dfs(w, emit);
      }
    }
    on_path_[v] = false;
    path_.pop_back();
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<bool> on_path_;
  std::vector<std::size_t> path_;
  std::size_t start_ = 0;
};

}  // namespace

std::vector<Conflict> cycle_conflicts(const Solution& solution, TargetBehavior behavior) {
  std::vector<Conflict> out;
  const auto& plans = solution.plans;
  std::size_t makespan = 0;
  for (const Plan& p : plans) makespan = std::max(makespan, p.length());

  std::vector<std::optional<Cell>> origin(plans.size());
  std::vector<std::optional<Cell>> dest(plans.size());
  std::vector<std::vector<std::size_t>> adj(plans.size());
  for (std::size_t x = 0; x < makespan; ++x) {
    std::multimap<Cell, std::size_t> by_origin;
    for (std::size_t j = 0; j < plans.size(); ++j) {
      origin[j] = location_at(plans[j], x, behavior);
      dest[j] = location_at(plans[j], x + 1, behavior);
      if (origin[j]) by_origin.emplace(*origin[j], j);
    }
    // Edge j -> l: agent j moves into the vertex agent l occupied at x.
    bool any_edge = false;
    for (std::size_t j = 0; j < plans.size(); ++j) {
      adj[j].clear();
      if (!origin[j] || !dest[j]) continue;
      auto [lo, hi] = by_origin.equal_range(*dest[j]);
      for (auto it = lo; it != hi; ++it) {
        if (it->second != j) {
          adj[j].push_back(it->second);
          any_edge = true;
        }
      }
      std::sort(adj[j].begin(), adj[j].end());
    }
    if (!any_edge) continue;

    CycleEnumerator(adj).run([&](const std::vector<std::size_t>& cyc) {
      // Same horizon as the pairwise checks: the longest participating plan.
      if (std::none_of(cyc.begin(), cyc.end(), [&](std::size_t j) { return plans[j].length() > x; })) {
        return;
      }
      Conflict c{ConflictKind::Cycle, {}, x, {}};
      for (std::size_t j : cyc) {
        c.agents.push_back(plans[j].agent);
        c.vertices.push_back(*origin[j]);
      }
      if (cyc.size() == 2) {
        const bool in_order = plans[cyc[0]].agent < plans[cyc[1]].agent;
        Conflict swap{ConflictKind::Swapping, ascending(c.agents[0], c.agents[1]), x,
                      in_order ? c.vertices : std::vector<Cell>{c.vertices[1], c.vertices[0]}};
        out.push_back(std::move(swap));
      }
      // Rotation order must start at the smallest agent id, which need not be
      // the smallest plan index.
      auto min_it = std::min_element(c.agents.begin(), c.agents.end());
      const auto shift = min_it - c.agents.begin();
      std::rotate(c.agents.begin(), min_it, c.agents.end());
      std::rotate(c.vertices.begin(), c.vertices.begin() + shift, c.vertices.end());
      out.push_back(std::move(c));
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Conflict> solution_conflicts(const Solution& solution,
                                         const SemanticsProfile& profile) {
  ConflictSet pairwise_kinds = profile.forbidden();
  pairwise_kinds.erase(ConflictKind::Cycle);
  const TargetBehavior behavior = profile.target_behavior();

  std::vector<Conflict> out;
  const auto& plans = solution.plans;
  if (!pairwise_kinds.empty()) {
    for (std::size_t i = 0; i < plans.size(); ++i) {
      for (std::size_t j = i + 1; j < plans.size(); ++j) {
        auto found = pairwise_conflicts(plans[i], plans[j], pairwise_kinds, behavior);
        out.insert(out.end(), std::make_move_iterator(found.begin()),
                   std::make_move_iterator(found.end()));
      }
    }
  }
  if (profile.forbids(ConflictKind::Cycle)) {
    auto cycles = cycle_conflicts(solution, behavior);
    out.insert(out.end(), std::make_move_iterator(cycles.begin()),
               std::make_move_iterator(cycles.end()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mapf
