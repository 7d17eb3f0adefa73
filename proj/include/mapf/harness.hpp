#pragma once

// Benchmark evaluation protocol: per scenario, solve growing prefixes of the
// entry list (2, 3, ... agents) until the first problem is not solved.

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mapf/io_bench.hpp"
#include "mapf/model.hpp"
#include "mapf/solve.hpp"

namespace mapf {

using Solver = std::function<SolveResult(const Instance&, const SolverBudget&)>;

enum class ProblemStatus : uint8_t { Solved, Timeout, Failure };

std::string_view to_string(ProblemStatus status) noexcept;

struct ProblemRecord {
  std::size_t n_agents = 0;
  ProblemStatus status = ProblemStatus::Failure;
  double runtime_ms = 0.0;
  // Recomputed by the validator; zero unless solved.
  std::size_t soc = 0;
  std::size_t makespan = 0;
};

struct ScenarioResult {
  std::string map_name;
  std::string scenario_id;
  std::size_t max_agents_solved = 0;
  std::vector<ProblemRecord> per_n;
};

struct MapSummary {
  std::string map_name;
  int32_t width = 0;
  int32_t height = 0;
  std::size_t problems = 0;
  std::size_t solved = 0;
  std::size_t min = 0;
  std::size_t max = 0;
};

// Throws CapacityError when the scenario has fewer than two entries.
ScenarioResult run_scenario(const Solver& solver, const Grid& grid, const Scenario& scenario,
                            std::chrono::duration<double> time_limit,
                            const std::string& map_name = {}, const std::string& scenario_id = {});

struct BenchmarkScenario {
  std::string id;
  Scenario scenario;
};

struct BenchmarkMap {
  std::string name;
  Grid grid;
  std::vector<BenchmarkScenario> scenarios;
};

// Every "<name>.map" in maps_dir paired with the "<name>*.scen" files in
// scens_dir, both sorted by file name. Throws IoError naming a map without
// scenarios or an unreadable file.
std::vector<BenchmarkMap> load_benchmark_set(const std::filesystem::path& maps_dir,
                                             const std::filesystem::path& scens_dir);

struct BenchmarkRun {
  std::vector<ScenarioResult> results;
  std::vector<MapSummary> summaries;
};

// Scenarios of all maps are run on up to `jobs` threads; results keep the
// input order.
BenchmarkRun run_benchmark(const Solver& solver, const std::vector<BenchmarkMap>& maps,
                           std::chrono::duration<double> time_limit, std::size_t jobs = 1);

// Pure aggregation of per-scenario results for one map.
MapSummary summarize(const std::string& map_name, int32_t width, int32_t height,
                     std::size_t problems, const std::vector<ScenarioResult>& results);

enum class ReportFormat : uint8_t { Csv, Table };

// Optional leading "# machine: ..." comment line.
void emit_problem_report(std::ostream& os, const std::vector<ScenarioResult>& results,
                         const std::optional<std::string>& machine = std::nullopt);
void emit_summary_report(std::ostream& os, const std::vector<MapSummary>& summaries,
                         ReportFormat format,
                         const std::optional<std::string>& machine = std::nullopt);

// Short description of the host for report headers.
std::string machine_description();

}  // namespace mapf
