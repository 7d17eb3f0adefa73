#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mapf {

// Entry point of the `mapf` tool. `args` excludes the program name.
// Exit codes: 0 success, 1 usage/input error, 2 invalid solution (validate),
// 3 timeout (solve), 4 unsolvable or failure (solve, oracle).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mapf
