#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mapf/conflict.hpp"
#include "mapf/model.hpp"

namespace mapf {

struct StructuralError {
  int32_t agent = 0;
  std::size_t time = 0;
  std::string description;
};

struct ValidationReport {
  bool valid = false;
  std::vector<StructuralError> structural_errors;
  std::vector<Conflict> conflicts;
  // Non-fatal notes, e.g. plans padded with trailing target waits.
  std::vector<std::string> warnings;
  std::size_t makespan = 0;
  std::size_t sum_of_costs = 0;
};

// Structural checks (start, end, legal steps, passable cells) plus every
// conflict the profile forbids. Objectives are computed on the canonicalized
// plans whether or not the solution is valid. Throws ShapeError when the
// solution has a different number of plans than the instance has agents.
ValidationReport validate(const Instance& instance, const Solution& solution,
                          const SemanticsProfile& profile);

// Human-readable report, stable line format.
void print_report(std::ostream& os, const ValidationReport& report);

}  // namespace mapf
