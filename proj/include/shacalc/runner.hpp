#pragma once

// Executes scenario tasks in declaration order and builds the report.
//
// Report (schema v1):
//   {"schema": "v1", "engine_version": ..., "scenario": name, "scenario_digest": sha256 hex,
//    "tasks": [{"index", "id", "kind", "status", "assertions", "result", "error", "elapsed_ms"}],
//    "all_passed": bool}
// Each key of a task's "expect" object becomes an assertion against the same
// key of its result. {"error": "<code>"} in expect asserts that the task fails
// with that error code. Tasks marked "stretch" are skipped unless enabled.
// Exit codes: 0 all assertions pass, 1 some assertion fails or a task errors,
// 2 invalid input.

#include <cstddef>
#include <string>

#include "json.hpp"
#include "shacalc/cohomology.hpp"
#include "shacalc/scenario.hpp"

namespace shacalc {

inline constexpr const char* kEngineVersion = "1.0.0";
inline constexpr std::size_t kStretchEntryBudget = 200'000'000;

struct RunOptions {
  unsigned threads = 1;
  std::size_t budget = kDefaultEntryBudget;
  std::string cache_dir;  // empty: no cache
  bool stretch = false;
  bool timing = true;     // false drops elapsed_ms, for byte comparisons
};

struct RunResult {
  nlohmann::json report;
  int exit_code = 0;
};

std::string scenario_digest(const nlohmann::json& source);

// Never throws for bad input: invalid scenarios give exit code 2 and a report
// holding the error.
RunResult run_scenario(const nlohmann::json& scenario, const RunOptions& options);
RunResult run_scenario_file(const std::string& path, const RunOptions& options);
RunResult run_builtin(const std::string& name, const RunOptions& options);

// One line per task.
std::string format_text(const nlohmann::json& report);

}  // namespace shacalc
