#pragma once

// Plain-text solution files: one line per agent, in agent order, holding the
// whitespace-separated `x,y` locations of the full plan. Lines starting with
// '#' are comments; blank lines are skipped.

#include <string>
#include <string_view>

#include "mapf/model.hpp"

namespace mapf {

// Throws ParseError with the 1-based line number on malformed tokens.
Solution read_solution(std::string_view text, GridExtent extent = {});
std::string write_solution(const Solution& solution);

}  // namespace mapf
