#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "mapf/errors.hpp"
#include "mapf/harness.hpp"

using namespace mapf;

namespace {

const auto kLimit = std::chrono::seconds(10);

Solver cbs_solver() {
  return [](const Instance& i, const SolverBudget& b) {
    return cbs(i, SemanticsProfile::search_based(), b);
  };
}

Solver always(SolveStatus status) {
  return [status](const Instance&, const SolverBudget&) {
    SolveResult r;
    r.status = status;
    return r;
  };
}

// Reports success with a solution that ignores the other agents.
Solver liar() {
  return [](const Instance& i, const SolverBudget&) {
    SolveResult r;
    r.status = SolveStatus::Solved;
    for (std::size_t a = 0; a < i.agents(); ++a) {
      r.solution.plans.push_back(Plan{static_cast<int32_t>(a), {i.source(a), i.source(a)}, {}});
    }
    return r;
  };
}

Scenario open_scenario(std::size_t n) {
  return generate_scenario(make_grid(6, 6, {}), n, RandomAssignment{}, 42, "open.map");
}

void check_monotone(const ScenarioResult& r) {
  for (std::size_t i = 0; i < r.per_n.size(); ++i) {
    EXPECT_EQ(r.per_n[i].n_agents, i + 2);
    if (i + 1 < r.per_n.size()) EXPECT_EQ(r.per_n[i].status, ProblemStatus::Solved);
  }
  if (r.max_agents_solved >= 2) {
    EXPECT_EQ(r.per_n[r.max_agents_solved - 2].status, ProblemStatus::Solved);
  }
}

}  // namespace

TEST(RunScenario, SolvesEveryPrefix) {
  const auto scen = open_scenario(5);
  const auto r = run_scenario(cbs_solver(), make_grid(6, 6, {}), scen, kLimit, "open.map", "s1");
  EXPECT_EQ(r.max_agents_solved, 5u);
  ASSERT_EQ(r.per_n.size(), 4u);
  for (const auto& p : r.per_n) {
    EXPECT_EQ(p.status, ProblemStatus::Solved);
    EXPECT_GT(p.soc, 0u);
    EXPECT_LE(p.makespan, p.soc);
  }
  check_monotone(r);
}

TEST(RunScenario, ImmediateTimeoutStops) {
  const auto r = run_scenario(always(SolveStatus::Timeout), make_grid(6, 6, {}), open_scenario(5),
                              kLimit);
  EXPECT_EQ(r.max_agents_solved, 0u);
  ASSERT_EQ(r.per_n.size(), 1u);
  EXPECT_EQ(r.per_n[0].n_agents, 2u);
  EXPECT_EQ(r.per_n[0].status, ProblemStatus::Timeout);
}

TEST(RunScenario, InvalidAnswerIsFailure) {
  const auto r = run_scenario(liar(), make_grid(6, 6, {}), open_scenario(3), kLimit);
  ASSERT_EQ(r.per_n.size(), 1u);
  EXPECT_EQ(r.per_n[0].status, ProblemStatus::Failure);
  EXPECT_EQ(r.max_agents_solved, 0u);
}

TEST(RunScenario, TooFewEntries) {
  EXPECT_THROW(run_scenario(cbs_solver(), make_grid(6, 6, {}), open_scenario(1), kLimit),
               CapacityError);
}

TEST(Summarize, CountsAndExtremes) {
  ScenarioResult a;
  a.max_agents_solved = 3;
  ScenarioResult b;
  b.max_agents_solved = 7;
  ScenarioResult c;
  c.max_agents_solved = 0;
  auto s = summarize("m", 8, 8, 64, {a, b});
  EXPECT_EQ(s.solved, 2u + 6u);
  EXPECT_EQ(s.min, 3u);
  EXPECT_EQ(s.max, 7u);
  s = summarize("m", 8, 8, 64, {a, b, c});
  EXPECT_EQ(s.solved, 8u);
  EXPECT_EQ(s.min, 0u);
  ScenarioResult one;
  one.max_agents_solved = 5;
  EXPECT_EQ(summarize("m", 1, 1, 10, {one}).solved, 4u);
}

TEST(RunBenchmark, ProblemsCountEntriesAndParallelMatchesSerial) {
  const Grid g = make_grid(6, 6, {});
  BenchmarkMap m{"open.map", g, {}};
  for (uint64_t seed = 0; seed < 4; ++seed) {
    m.scenarios.push_back(
        {"s" + std::to_string(seed), generate_scenario(g, 4 + seed, RandomAssignment{}, seed, "open.map")});
  }
  const auto serial = run_benchmark(cbs_solver(), {m}, kLimit, 1);
  const auto parallel = run_benchmark(cbs_solver(), {m}, kLimit, 3);
  ASSERT_EQ(serial.summaries.size(), 1u);
  EXPECT_EQ(serial.summaries[0].problems, 4u + 5u + 6u + 7u);
  EXPECT_EQ(serial.summaries[0].solved, parallel.summaries[0].solved);
  ASSERT_EQ(parallel.results.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(parallel.results[i].scenario_id, "s" + std::to_string(i));
    EXPECT_EQ(parallel.results[i].max_agents_solved, serial.results[i].max_agents_solved);
    check_monotone(parallel.results[i]);
  }
}

TEST(LoadBenchmarkSet, PairsFilesAndReportsMissing) {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "mapf_harness_test";
  fs::remove_all(root);
  fs::create_directories(root / "maps");
  fs::create_directories(root / "scens");
  const Grid g = make_grid(4, 4, {});
  write_text_file(root / "maps" / "a.map", serialize_map(g));
  write_text_file(root / "scens" / "a-random-1.scen",
                  serialize_scen(generate_scenario(g, 3, RandomAssignment{}, 1, "a.map")));
  write_text_file(root / "scens" / "a-random-2.scen",
                  serialize_scen(generate_scenario(g, 3, RandomAssignment{}, 2, "a.map")));
  write_text_file(root / "scens" / "ab-random-1.scen", "version 1\n");
  const auto set = load_benchmark_set(root / "maps", root / "scens");
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set[0].scenarios.size(), 2u);
  EXPECT_EQ(set[0].scenarios[0].id, "a-random-1");

  write_text_file(root / "maps" / "b.map", serialize_map(g));
  try {
    load_benchmark_set(root / "maps", root / "scens");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("b.map"), std::string::npos);
  }
  EXPECT_THROW(load_benchmark_set(root / "nope", root / "scens"), IoError);
  fs::remove_all(root);
}

TEST(EmitReport, CsvAndTable) {
  ScenarioResult r{"m.map", "s1", 2, {{2, ProblemStatus::Solved, 1.5, 7, 4}, {3, ProblemStatus::Timeout, 30000, 0, 0}}};
  std::ostringstream os;
  emit_problem_report(os, {r});
  EXPECT_EQ(os.str(),
            "map,scenario,n_agents,status,runtime_ms,soc,makespan\n"
            "m.map,s1,2,solved,1.500,7,4\n"
            "m.map,s1,3,timeout,30000.000,0,0\n");
  std::ostringstream empty;
  emit_problem_report(empty, {});
  EXPECT_EQ(empty.str(), "map,scenario,n_agents,status,runtime_ms,soc,makespan\n");

  std::ostringstream summary;
  emit_summary_report(summary, {MapSummary{"empty-8-8", 8, 8, 800, 528, 18, 25}}, ReportFormat::Csv,
                      std::string("test box"));
  EXPECT_EQ(summary.str(),
            "# machine: test box\nmap,width,height,problems,solved,min,max\n"
            "empty-8-8,8,8,800,528,18,25\n");
  std::ostringstream table;
  emit_summary_report(table, {MapSummary{"empty-8-8", 8, 8, 800, 528, 18, 25}}, ReportFormat::Table);
  EXPECT_NE(table.str().find("8x8"), std::string::npos);
  EXPECT_NE(table.str().find("800"), std::string::npos);
}
