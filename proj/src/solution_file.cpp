#include "mapf/solution_file.hpp"

#include <charconv>

#include "mapf/errors.hpp"

namespace mapf {

namespace {

bool parse_int(std::string_view s, int32_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

Solution read_solution(std::string_view text, GridExtent extent) {
  Solution sol;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size() || line[i] == '#') continue;

    Plan plan;
    plan.agent = static_cast<int32_t>(sol.plans.size());
    plan.extent = extent;
    while (i < line.size()) {
      std::size_t j = i;
      while (j < line.size() && !is_space(line[j])) ++j;
      const std::string_view token = line.substr(i, j - i);
      const std::size_t comma = token.find(',');
      Cell c;
      if (comma == std::string_view::npos || !parse_int(token.substr(0, comma), c.x) ||
          !parse_int(token.substr(comma + 1), c.y)) {
        throw ParseError(line_no, "bad location token '" + std::string(token) + "'");
      }
      plan.locations.push_back(c);
      i = j;
      while (i < line.size() && is_space(line[i])) ++i;
    }
    sol.plans.push_back(std::move(plan));
  }
  return sol;
}

std::string write_solution(const Solution& solution) {
  std::string out;
  for (const Plan& plan : solution.plans) {
    for (std::size_t x = 0; x < plan.locations.size(); ++x) {
      if (x) out += ' ';
      out += std::to_string(plan.locations[x].x) + ',' + std::to_string(plan.locations[x].y);
    }
    out += '\n';
  }
  return out;
}

}  // namespace mapf
