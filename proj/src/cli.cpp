#include "mapf/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "mapf/errors.hpp"
#include "mapf/harness.hpp"
#include "mapf/io_bench.hpp"
#include "mapf/oracle.hpp"
#include "mapf/solution_file.hpp"
#include "mapf/solve.hpp"
#include "mapf/validate.hpp"

namespace mapf {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitUnsolved = 4;

struct InstanceArgs {
  std::string map;
  std::string scen;
  std::size_t agents = 0;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& a) {
  cmd->add_option("--map", a.map, "map file")->required();
  cmd->add_option("--scen", a.scen, "scenario file")->required();
  cmd->add_option("--agents", a.agents, "number of scenario entries to use")
      ->required()
      ->check(CLI::PositiveNumber);
}

Instance load_instance(const InstanceArgs& a) {
  const Grid grid = parse_map(read_text_file(a.map));
  return instance_from_scenario(grid, parse_scen(read_text_file(a.scen)), a.agents);
}

SemanticsProfile make_profile(const std::string& forbidden, const std::string& behavior,
                              const std::string& objective) {
  const auto b = parse_target_behavior(behavior);
  if (!b) throw DomainError("unknown target behavior '" + behavior + "'");
  const auto o = parse_objective(objective);
  if (!o) throw DomainError("unknown objective '" + objective + "'");
  return SemanticsProfile(parse_conflict_set(forbidden), *b, *o);
}

// Whitespace-separated "x,y" tokens; '#' starts a comment line.
std::vector<Cell> read_cell_list(const std::string& path) {
  std::vector<Cell> cells;
  std::istringstream lines(read_text_file(path));
  std::size_t line_no = 0;
  for (std::string line; std::getline(lines, line);) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    std::istringstream tokens(line);
    for (std::string tok; tokens >> tok;) {
      Cell c;
      char comma = 0;
      std::istringstream t(tok);
      if (!(t >> c.x >> comma >> c.y) || comma != ',' || !t.eof()) {
        throw ParseError(line_no, path + ": bad cell '" + tok + "'");
      }
      cells.push_back(c);
    }
  }
  return cells;
}

AssignmentMode parse_mode(const std::string& text) {
  if (text == "random") return RandomAssignment{};
  if (text.rfind("clustered:", 0) == 0) {
    const std::string r = text.substr(10);
    std::size_t used = 0;
    int radius = -1;
    try {
      radius = std::stoi(r, &used);
    } catch (const std::exception&) {
    }
    if (radius < 0 || used != r.size()) throw DomainError("bad cluster radius '" + r + "'");
    return ClusteredAssignment{radius};
  }
  if (text.rfind("designated:", 0) == 0) {
    const std::string files = text.substr(11);
    const auto comma = files.find(',');
    if (comma == std::string::npos) throw DomainError("designated mode needs SFILE,TFILE");
    return DesignatedAssignment{read_cell_list(files.substr(0, comma)),
                                read_cell_list(files.substr(comma + 1))};
  }
  throw DomainError("unknown mode '" + text + "'");
}

Solver make_solver(const std::string& algo) {
  const SemanticsProfile profile = SemanticsProfile::search_based();
  if (algo == "cbs") {
    return [profile](const Instance& i, const SolverBudget& b) { return cbs(i, profile, b); };
  }
  return [profile](const Instance& i, const SolverBudget& b) { return prioritized(i, profile, b); };
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-agent pathfinding toolkit", "mapf"};
  app.require_subcommand(1);

  InstanceArgs inst;
  std::string profile_text = "vertex,edge,swapping";
  std::string behavior_text = "stay";
  std::string objective_text = "soc";

  auto* validate_cmd = app.add_subcommand("validate", "check a solution file");
  add_instance_options(validate_cmd, inst);
  std::string solution_path;
  validate_cmd->add_option("--solution", solution_path, "solution file")->required();
  validate_cmd->add_option("--profile", profile_text, "forbidden conflict kinds");
  validate_cmd->add_option("--target-behavior", behavior_text, "stay|disappear");
  validate_cmd->add_option("--objective", objective_text, "soc|makespan");

  auto* solve_cmd = app.add_subcommand("solve", "solve an instance");
  add_instance_options(solve_cmd, inst);
  std::string algo = "cbs";
  double time_limit = 30.0;
  std::string out_path;
  solve_cmd->add_option("--algo", algo)->check(CLI::IsMember({"cbs", "prioritized"}));
  solve_cmd->add_option("--time-limit", time_limit, "seconds")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", out_path, "solution file (default stdout)");

  auto* bench_cmd = app.add_subcommand("bench", "run the benchmark protocol");
  std::string maps_dir;
  std::string scens_dir;
  std::string summary_path;
  std::size_t jobs = 1;
  bench_cmd->add_option("--maps-dir", maps_dir)->required();
  bench_cmd->add_option("--scens-dir", scens_dir)->required();
  bench_cmd->add_option("--algo", algo)->check(CLI::IsMember({"cbs", "prioritized"}));
  bench_cmd->add_option("--time-limit", time_limit, "seconds per problem")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", out_path, "per-problem CSV")->required();
  bench_cmd->add_option("--summary", summary_path, "per-map summary CSV");
  bench_cmd->add_option("--jobs", jobs, "parallel scenarios")->check(CLI::PositiveNumber);

  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive optimum of a tiny instance");
  add_instance_options(oracle_cmd, inst);
  std::optional<std::size_t> horizon;
  oracle_cmd->add_option("--profile", profile_text, "forbidden conflict kinds");
  oracle_cmd->add_option("--target-behavior", behavior_text, "stay|disappear");
  oracle_cmd->add_option("--objective", objective_text, "soc|makespan");
  oracle_cmd->add_option("--horizon", horizon, "longest plan considered");

  auto* gen_cmd = app.add_subcommand("gen-scen", "generate a scenario file");
  std::string gen_map;
  std::size_t gen_n = 0;
  std::string mode_text = "random";
  uint64_t seed = 0;
  gen_cmd->add_option("--map", gen_map)->required();
  gen_cmd->add_option("--n", gen_n)->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--mode", mode_text, "random|clustered:R|designated:SFILE,TFILE");
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--out", out_path, "scenario file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate_cmd) {
      const Instance instance = load_instance(inst);
      const auto profile = make_profile(profile_text, behavior_text, objective_text);
      const Solution solution =
          read_solution(read_text_file(solution_path), extent_of(instance.grid()));
      const auto report = validate(instance, solution, profile);
      print_report(out, report);
      return report.valid ? kExitOk : kExitInvalid;
    }
    if (*solve_cmd) {
      const Instance instance = load_instance(inst);
      const auto result = make_solver(algo)(
          instance, SolverBudget::from_now(std::chrono::duration<double>(time_limit)));
      if (result.status == SolveStatus::Solved) {
        write_output(out_path, write_solution(result.solution), out);
      }
      (out_path.empty() || out_path == "-" ? err : out)
          << "status " << to_string(result.status) << "\ncost " << result.cost << "\nruntime_ms "
          << result.stats.runtime_ms << '\n';
      switch (result.status) {
        case SolveStatus::Solved: return kExitOk;
        case SolveStatus::Timeout: return kExitTimeout;
        default: return kExitUnsolved;
      }
    }
    if (*bench_cmd) {
      const auto maps = load_benchmark_set(maps_dir, scens_dir);
      const auto run = run_benchmark(make_solver(algo), maps,
                                     std::chrono::duration<double>(time_limit), jobs);
      const std::string machine = machine_description();
      std::ostringstream problems;
      emit_problem_report(problems, run.results, machine);
      write_text_file(out_path, problems.str());
      if (!summary_path.empty()) {
        std::ostringstream summary;
        emit_summary_report(summary, run.summaries, ReportFormat::Csv, machine);
        write_text_file(summary_path, summary.str());
      }
      emit_summary_report(out, run.summaries, ReportFormat::Table);
      return kExitOk;
    }
    if (*oracle_cmd) {
      const Instance instance = load_instance(inst);
      const auto profile = make_profile(profile_text, behavior_text, objective_text);
      const auto result = brute_force_optimal(instance, profile, horizon);
      if (!result.found) {
        out << "unsolvable within horizon " << result.horizon << '\n';
        return kExitUnsolved;
      }
      out << "cost " << result.cost << '\n' << write_solution(result.witness);
      return kExitOk;
    }
    if (*gen_cmd) {
      const Grid grid = parse_map(read_text_file(gen_map));
      const auto name = std::filesystem::path(gen_map).filename().string();
      const auto scen = generate_scenario(grid, gen_n, parse_mode(mode_text), seed, name);
      write_output(out_path, serialize_scen(scen), out);
      return kExitOk;
    }
  } catch (const MapfError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mapf
