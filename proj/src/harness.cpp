#include "mapf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "mapf/errors.hpp"
#include "mapf/validate.hpp"

namespace mapf {

std::string_view to_string(ProblemStatus status) noexcept {
  switch (status) {
    case ProblemStatus::Solved: return "solved";
    case ProblemStatus::Timeout: return "timeout";
    case ProblemStatus::Failure: return "failure";
  }
  return "?";
}

namespace {

ProblemRecord solve_one(const Solver& solver, const Grid& grid, const Scenario& scenario,
                        std::size_t n, std::chrono::duration<double> time_limit) {
  ProblemRecord record;
  record.n_agents = n;
  const auto started = std::chrono::steady_clock::now();
  auto finish = [&] {
    record.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    return record;
  };
  std::optional<Instance> instance;
  try {
    instance.emplace(instance_from_scenario(grid, scenario, n));
  } catch (const MapfError&) {
    return finish();
  }
  const SolveResult result = solver(*instance, SolverBudget::from_now(time_limit));
  finish();
  if (result.status == SolveStatus::Timeout) {
    record.status = ProblemStatus::Timeout;
    return record;
  }
  if (result.status != SolveStatus::Solved) return record;
  try {
    const auto report = validate(*instance, result.solution, SemanticsProfile::search_based());
    if (!report.valid) return record;
    record.status = ProblemStatus::Solved;
    record.soc = report.sum_of_costs;
    record.makespan = report.makespan;
  } catch (const MapfError&) {
  }
  return record;
}

}  // namespace

ScenarioResult run_scenario(const Solver& solver, const Grid& grid, const Scenario& scenario,
                            std::chrono::duration<double> time_limit, const std::string& map_name,
                            const std::string& scenario_id) {
  if (scenario.entries.size() < 2) {
    throw CapacityError("scenario needs at least 2 entries, has " +
                        std::to_string(scenario.entries.size()));
  }
  ScenarioResult out;
  out.map_name = map_name;
  out.scenario_id = scenario_id;
  for (std::size_t n = 2; n <= scenario.entries.size(); ++n) {
    out.per_n.push_back(solve_one(solver, grid, scenario, n, time_limit));
    if (out.per_n.back().status != ProblemStatus::Solved) break;
    out.max_agents_solved = n;
  }
  return out;
}

std::vector<BenchmarkMap> load_benchmark_set(const std::filesystem::path& maps_dir,
                                             const std::filesystem::path& scens_dir) {
  namespace fs = std::filesystem;
  auto list = [](const fs::path& dir, std::string_view ext) {
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) throw IoError("cannot open directory " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : it) {
      if (entry.is_regular_file() && entry.path().extension() == ext) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
  };
  const auto maps = list(maps_dir, ".map");
  const auto scens = list(scens_dir, ".scen");
  std::vector<BenchmarkMap> out;
  for (const auto& map_path : maps) {
    const std::string stem = map_path.stem().string();
    BenchmarkMap bm{map_path.filename().string(), parse_map(read_text_file(map_path)), {}};
    for (const auto& scen_path : scens) {
      const std::string name = scen_path.filename().string();
      // "<stem>.scen" or "<stem>-<suffix>.scen", so "a" does not claim "ab-1.scen".
      if (name.rfind(stem, 0) != 0) continue;
      const char next = name[stem.size()];
      if (next != '.' && next != '-') continue;
      try {
        bm.scenarios.push_back({scen_path.stem().string(), parse_scen(read_text_file(scen_path))});
      } catch (const ParseError& e) {
        throw ParseError(e.line(), scen_path.string() + ": " + e.what());
      }
    }
    if (bm.scenarios.empty()) {
      throw IoError("no scenario files for " + map_path.string() + " in " + scens_dir.string());
    }
    out.push_back(std::move(bm));
  }
  return out;
}

MapSummary summarize(const std::string& map_name, int32_t width, int32_t height,
                     std::size_t problems, const std::vector<ScenarioResult>& results) {
  MapSummary s{map_name, width, height, problems, 0, 0, 0};
  bool first = true;
  for (const auto& r : results) {
    if (r.max_agents_solved >= 2) s.solved += r.max_agents_solved - 1;
    s.min = first ? r.max_agents_solved : std::min(s.min, r.max_agents_solved);
    s.max = std::max(s.max, r.max_agents_solved);
    first = false;
  }
  return s;
}

BenchmarkRun run_benchmark(const Solver& solver, const std::vector<BenchmarkMap>& maps,
                           std::chrono::duration<double> time_limit, std::size_t jobs) {
  struct Task {
    const BenchmarkMap* map;
    const BenchmarkScenario* scenario;
  };
  std::vector<Task> tasks;
  for (const auto& m : maps) {
    for (const auto& s : m.scenarios) tasks.push_back({&m, &s});
  }
  BenchmarkRun run;
  run.results.resize(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        run.results[i] = run_scenario(solver, tasks[i].map->grid, tasks[i].scenario->scenario,
                                      time_limit, tasks[i].map->name, tasks[i].scenario->id);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(tasks.size(), 1));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::size_t offset = 0;
  for (const auto& m : maps) {
    std::size_t problems = 0;
    for (const auto& s : m.scenarios) problems += s.scenario.entries.size();
    std::vector<ScenarioResult> mine(run.results.begin() + static_cast<std::ptrdiff_t>(offset),
                                     run.results.begin() +
                                         static_cast<std::ptrdiff_t>(offset + m.scenarios.size()));
    offset += m.scenarios.size();
    run.summaries.push_back(summarize(m.name, m.grid.width(), m.grid.height(), problems, mine));
  }
  return run;
}

void emit_problem_report(std::ostream& os, const std::vector<ScenarioResult>& results,
                         const std::optional<std::string>& machine) {
  if (machine) os << "# machine: " << *machine << '\n';
  os << "map,scenario,n_agents,status,runtime_ms,soc,makespan\n";
  for (const auto& r : results) {
    for (const auto& p : r.per_n) {
      os << r.map_name << ',' << r.scenario_id << ',' << p.n_agents << ',' << to_string(p.status)
         << ',' << std::fixed << std::setprecision(3) << p.runtime_ms << std::defaultfloat << ','
         << p.soc << ',' << p.makespan << '\n';
    }
  }
}

void emit_summary_report(std::ostream& os, const std::vector<MapSummary>& summaries,
                         ReportFormat format, const std::optional<std::string>& machine) {
  if (machine) os << "# machine: " << *machine << '\n';
  if (format == ReportFormat::Csv) {
    os << "map,width,height,problems,solved,min,max\n";
    for (const auto& s : summaries) {
      os << s.map_name << ',' << s.width << ',' << s.height << ',' << s.problems << ','
         << s.solved << ',' << s.min << ',' << s.max << '\n';
    }
    return;
  }
  std::size_t name_width = 3;
  for (const auto& s : summaries) name_width = std::max(name_width, s.map_name.size());
  os << std::left << std::setw(static_cast<int>(name_width)) << "Map" << std::right
     << std::setw(10) << "Size" << std::setw(10) << "Problems" << std::setw(8) << "Solved"
     << std::setw(6) << "Min" << std::setw(6) << "Max" << '\n';
  for (const auto& s : summaries) {
    std::ostringstream size;
    size << s.width << 'x' << s.height;
    os << std::left << std::setw(static_cast<int>(name_width)) << s.map_name << std::right
       << std::setw(10) << size.str() << std::setw(10) << s.problems << std::setw(8) << s.solved
       << std::setw(6) << s.min << std::setw(6) << s.max << '\n';
  }
}

std::string machine_description() {
  std::string model;
  std::ifstream cpuinfo("/proc/cpuinfo");
  for (std::string line; std::getline(cpuinfo, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) model = line.substr(colon + 2);
      break;
    }
  }
  if (model.empty()) model = "unknown cpu";
  return model + ", " + std::to_string(std::thread::hardware_concurrency()) + " threads";
}

}  // namespace mapf
