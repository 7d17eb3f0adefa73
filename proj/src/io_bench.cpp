#include "mapf/io_bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

#include "mapf/errors.hpp"

namespace mapf {

namespace {

// Splits on LF, dropping a trailing CR per line. A final LF does not produce
// an extra empty line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

// "key value" header line.
bool header_value(std::string_view line, std::string_view key, std::string_view& value) {
  if (line.size() <= key.size() || line.substr(0, key.size()) != key ||
      line[key.size()] != ' ') {
    return false;
  }
  value = line.substr(key.size() + 1);
  while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
  while (!value.empty() && value.back() == ' ') value.remove_suffix(1);
  return true;
}

bool passable_char(char c, bool& passable) {
  switch (c) {
    case '.':
    case 'G':
    case 'S':
      passable = true;
      return true;
    case '@':
    case 'O':
    case 'T':
    case 'W':
      passable = false;
      return true;
    default:
      return false;
  }
}

}  // namespace

Grid parse_map(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t ln = 0;
  auto line_no = [&] { return ln + 1; };

  std::string_view value;
  if (lines.empty() || !header_value(lines[0], "type", value)) {
    throw ParseError(1, "missing 'type' header");
  }
  ln = 1;
  int32_t height = -1;
  int32_t width = -1;
  for (; ln < lines.size() && lines[ln] != "map"; ++ln) {
    if (header_value(lines[ln], "height", value)) {
      if (!parse_number(value, height) || height < 1) {
        throw ParseError(line_no(), "bad height '" + std::string(value) + "'");
      }
    } else if (header_value(lines[ln], "width", value)) {
      if (!parse_number(value, width) || width < 1) {
        throw ParseError(line_no(), "bad width '" + std::string(value) + "'");
      }
    } else {
      throw ParseError(line_no(), "unexpected header line '" + std::string(lines[ln]) + "'");
    }
  }
  if (ln == lines.size()) throw ParseError(line_no(), "missing 'map' line");
  if (height < 0) throw ParseError(line_no(), "missing 'height' header");
  if (width < 0) throw ParseError(line_no(), "missing 'width' header");
  ++ln;

  std::vector<uint8_t> mask(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (int32_t y = 0; y < height; ++y, ++ln) {
    if (ln >= lines.size()) {
      throw ParseError(line_no(), "expected " + std::to_string(height) + " map rows, got " +
                                      std::to_string(y));
    }
    const std::string_view row = lines[ln];
    if (row.size() != static_cast<std::size_t>(width)) {
      throw ParseError(line_no(), "map row " + std::to_string(y) + " has " +
                                      std::to_string(row.size()) + " characters, expected " +
                                      std::to_string(width));
    }
    for (int32_t x = 0; x < width; ++x) {
      bool passable = false;
      if (!passable_char(row[static_cast<std::size_t>(x)], passable)) {
        throw ParseError(line_no(), std::string("unknown map character '") +
                                        row[static_cast<std::size_t>(x)] + "' in row " +
                                        std::to_string(y));
      }
      mask[static_cast<std::size_t>(y * width + x)] = passable ? 1 : 0;
    }
  }
  for (; ln < lines.size(); ++ln) {
    if (!lines[ln].empty()) throw ParseError(line_no(), "unexpected content after map rows");
  }
  return Grid(width, height, std::move(mask));
}

std::string serialize_map(const Grid& grid) {
  std::string out = "type octile\nheight " + std::to_string(grid.height()) + "\nwidth " +
                    std::to_string(grid.width()) + "\nmap\n";
  out.reserve(out.size() + grid.cell_count() + static_cast<std::size_t>(grid.height()));
  for (int32_t y = 0; y < grid.height(); ++y) {
    for (int32_t x = 0; x < grid.width(); ++x) out += grid.passable(Cell{x, y}) ? '.' : '@';
    out += '\n';
  }
  return out;
}

Scenario parse_scen(std::string_view text) {
  const auto lines = split_lines(text);
  std::string_view version;
  if (lines.empty() || !header_value(lines[0], "version", version)) {
    throw ParseError(1, "missing 'version' header");
  }
  double version_number = 0;
  if (!parse_number(version, version_number) || version_number != 1.0) {
    throw ParseError(1, "unsupported scenario version '" + std::string(version) + "'");
  }

  Scenario scen;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const std::string_view line = lines[ln];
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string_view::npos ? tab : tab - pos));
      if (tab == std::string_view::npos) break;
      pos = tab + 1;
    }
    if (fields.size() != 9) {
      throw ParseError(ln + 1, "expected 9 tab-separated fields, got " +
                                   std::to_string(fields.size()));
    }
    ScenarioEntry e;
    e.map_name = std::string(fields[1]);
    auto number = [&](std::size_t idx, auto& out, const char* what) {
      if (!parse_number(fields[idx], out)) {
        throw ParseError(ln + 1, std::string("non-numeric ") + what + " '" +
                                     std::string(fields[idx]) + "'");
      }
    };
    number(0, e.bucket, "bucket");
    number(2, e.map_width, "width");
    number(3, e.map_height, "height");
    number(4, e.start.x, "start x");
    number(5, e.start.y, "start y");
    number(6, e.goal.x, "goal x");
    number(7, e.goal.y, "goal y");
    number(8, e.optimal_length, "optimal length");
    if (e.map_width < 1 || e.map_height < 1) {
      throw ParseError(ln + 1, "non-positive map dimensions");
    }
    auto inside = [&](Cell c) {
      return c.x >= 0 && c.y >= 0 && c.x < e.map_width && c.y < e.map_height;
    };
    if (!inside(e.start) || !inside(e.goal)) {
      throw ParseError(ln + 1, "start or goal outside the declared map dimensions");
    }
    scen.entries.push_back(std::move(e));
  }
  return scen;
}

std::string serialize_scen(const Scenario& scenario) {
  std::string out = "version 1\n";
  char length[64];
  for (const auto& e : scenario.entries) {
    std::snprintf(length, sizeof(length), "%.8f", e.optimal_length);
    out += std::to_string(e.bucket) + '\t' + e.map_name + '\t' + std::to_string(e.map_width) +
           '\t' + std::to_string(e.map_height) + '\t' + std::to_string(e.start.x) + '\t' +
           std::to_string(e.start.y) + '\t' + std::to_string(e.goal.x) + '\t' +
           std::to_string(e.goal.y) + '\t' + length + '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error writing " + path.string());
}

std::vector<Cell> largest_reachable_region(const Grid& grid) {
  std::vector<int32_t> label(grid.cell_count(), -1);
  std::vector<VertexId> best;
  std::vector<VertexId> component;
  std::array<VertexId, 4> nbrs{};
  int32_t next_label = 0;
  // Row-major scan: the first vertex of each component is its smallest cell,
  // so keeping the first maximum implements the tie-break.
  for (VertexId start = 0; start < static_cast<VertexId>(grid.cell_count()); ++start) {
    if (!grid.passable(start) || label[static_cast<std::size_t>(start)] >= 0) continue;
    component.clear();
    label[static_cast<std::size_t>(start)] = next_label;
    component.push_back(start);
    for (std::size_t head = 0; head < component.size(); ++head) {
      const int n = grid.neighbors(component[head], nbrs);
      for (int i = 0; i < n; ++i) {
        auto& l = label[static_cast<std::size_t>(nbrs[i])];
        if (l < 0) {
          l = next_label;
          component.push_back(nbrs[i]);
        }
      }
    }
    ++next_label;
    if (component.size() > best.size()) best = component;
  }
  std::sort(best.begin(), best.end());
  std::vector<Cell> out;
  out.reserve(best.size());
  for (VertexId v : best) out.push_back(grid.cell(v));
  return out;
}

double octile_distance(const Grid& grid, Cell from, Cell to) {
  if (!grid.passable(from) || !grid.passable(to)) return -1.0;
  constexpr double kDiag = 1.4142135623730951;
  std::vector<double> dist(grid.cell_count(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  const VertexId goal = grid.index(to);
  dist[static_cast<std::size_t>(grid.index(from))] = 0.0;
  open.emplace(0.0, grid.index(from));
  while (!open.empty()) {
    const auto [d, v] = open.top();
    open.pop();
    if (d > dist[static_cast<std::size_t>(v)]) continue;
    if (v == goal) return d;
    const Cell c = grid.cell(v);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const Cell n{c.x + dx, c.y + dy};
        if (!grid.passable(n)) continue;
        if (dx != 0 && dy != 0 &&
            (!grid.passable(Cell{c.x + dx, c.y}) || !grid.passable(Cell{c.x, c.y + dy}))) {
          continue;
        }
        const double nd = d + (dx != 0 && dy != 0 ? kDiag : 1.0);
        auto& slot = dist[static_cast<std::size_t>(grid.index(n))];
        if (nd < slot) {
          slot = nd;
          open.emplace(nd, grid.index(n));
        }
      }
    }
  }
  return -1.0;
}

namespace {

// Cells within BFS distance r of `center`, in row-major order.
std::vector<Cell> ball(const Grid& grid, Cell center, int32_t r) {
  const auto dist = distance_map(grid, center);
  std::vector<Cell> out;
  for (VertexId v = 0; v < static_cast<VertexId>(dist.size()); ++v) {
    const int32_t d = dist[static_cast<std::size_t>(v)];
    if (d >= 0 && d <= r) out.push_back(grid.cell(v));
  }
  return out;
}

// k distinct elements drawn uniformly without replacement, in draw order.
std::vector<Cell> sample(std::vector<Cell> pool, std::size_t k, std::mt19937_64& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  return pool;
}

void require(std::size_t available, std::size_t needed, const std::string& what) {
  if (available < needed) {
    throw CapacityError(what + ": need " + std::to_string(needed) + " distinct cells, only " +
                        std::to_string(available) + " eligible (short by " +
                        std::to_string(needed - available) + ")");
  }
}

ScenarioEntry make_entry(const Grid& grid, const std::string& map_name, Cell s, Cell t) {
  ScenarioEntry e;
  // Stored at file precision so the entry survives a write and re-read.
  char text[64];
  std::snprintf(text, sizeof(text), "%.8f", octile_distance(grid, s, t));
  parse_number(text, e.optimal_length);
  e.bucket = static_cast<uint32_t>(std::floor(e.optimal_length / 4.0));
  e.map_name = map_name;
  e.map_width = grid.width();
  e.map_height = grid.height();
  e.start = s;
  e.goal = t;
  return e;
}

}  // namespace

Scenario generate_scenario(const Grid& grid, std::size_t n, const AssignmentMode& mode,
                           uint64_t seed, const std::string& map_name) {
  if (n == 0) throw CapacityError("scenario must have at least one agent");
  std::mt19937_64 rng(seed);
  std::vector<Cell> sources;
  std::vector<Cell> targets;

  if (std::holds_alternative<RandomAssignment>(mode)) {
    const auto region = largest_reachable_region(grid);
    require(region.size(), n, "random assignment");
    sources = sample(region, n, rng);
    targets = sample(region, n, rng);
  } else if (const auto* clustered = std::get_if<ClusteredAssignment>(&mode)) {
    if (clustered->radius < 0) throw DomainError("cluster radius must be non-negative");
    const auto region = largest_reachable_region(grid);
    require(region.size(), 1, "clustered assignment");
    const Cell s0 = sample(region, 1, rng).front();
    const Cell t0 = sample(region, 1, rng).front();
    auto near_source = ball(grid, s0, clustered->radius);
    auto near_target = ball(grid, t0, clustered->radius);
    std::erase(near_source, s0);
    std::erase(near_target, t0);
    require(near_source.size() + 1, n, "clustered assignment (sources)");
    require(near_target.size() + 1, n, "clustered assignment (targets)");
    sources = sample(std::move(near_source), n - 1, rng);
    targets = sample(std::move(near_target), n - 1, rng);
    sources.insert(sources.begin(), s0);
    targets.insert(targets.begin(), t0);
  } else {
    const auto& designated = std::get<DesignatedAssignment>(mode);
    auto dedup = [](std::vector<Cell> cells) {
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
      return cells;
    };
    auto source_pool = dedup(designated.sources);
    auto target_pool = dedup(designated.targets);
    for (const auto* pool : {&source_pool, &target_pool}) {
      for (const Cell& c : *pool) {
        if (!grid.passable(c)) {
          std::ostringstream msg;
          msg << "designated cell " << c << " is not passable";
          throw DomainError(msg.str());
        }
      }
    }
    require(source_pool.size(), n, "designated assignment (sources)");
    require(target_pool.size(), n, "designated assignment (targets)");
    sources = sample(std::move(source_pool), n, rng);
    // Each source takes a uniformly drawn unused target from its own component.
    std::vector<uint8_t> used(target_pool.size(), 0);
    for (const Cell& s : sources) {
      const auto dist = distance_map(grid, s);
      std::vector<std::size_t> options;
      for (std::size_t i = 0; i < target_pool.size(); ++i) {
        if (!used[i] && dist[static_cast<std::size_t>(grid.index(target_pool[i]))] >= 0) {
          options.push_back(i);
        }
      }
      if (options.empty()) {
        std::ostringstream msg;
        msg << "designated assignment: no unused target reachable from source " << s;
        throw CapacityError(msg.str());
      }
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      const std::size_t chosen = options[pick(rng)];
      used[chosen] = 1;
      targets.push_back(target_pool[chosen]);
    }
  }

  Scenario scen;
  scen.entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    scen.entries.push_back(make_entry(grid, map_name, sources[i], targets[i]));
  }
  return scen;
}

Instance instance_from_scenario(const Grid& grid, const Scenario& scenario, std::size_t n) {
  if (n > scenario.entries.size()) {
    throw CapacityError("scenario has " + std::to_string(scenario.entries.size()) +
                        " entries, " + std::to_string(n) + " requested");
  }
  std::vector<Cell> sources;
  std::vector<Cell> targets;
  for (std::size_t i = 0; i < n; ++i) {
    sources.push_back(scenario.entries[i].start);
    targets.push_back(scenario.entries[i].goal);
  }
  return Instance(grid, std::move(sources), std::move(targets));
}

}  // namespace mapf
