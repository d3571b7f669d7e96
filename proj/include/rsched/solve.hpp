#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsched/core.hpp"
#include "rsched/io.hpp"

namespace rsched {

enum class Algo { automatic, oracle, xp, fpt, common_dd, multi_dd, moore };

Algo algo_from_name(const std::string& name);
std::string algo_name(Algo algo);

struct SolveCaps {
  Time gamma_cap = 4;                    // xp
  int k_cap = 20;                        // fpt
  int oracle_n_cap = 22;                 // oracle
  std::int64_t state_cap = 10'000'000;   // xp and multi-dd state spaces
  int dd_class_cap = 3;                  // multi-dd
  std::int64_t max_scenarios = 1'000'000;
};

struct SolveConfig {
  Algo algo = Algo::automatic;
  SolveCaps caps;
  bool strict_paper_step10 = false;
  bool timings = false;
};

// Instance parameters the dispatch policy looks at.
struct ParameterReport {
  int n = 0;
  Time gamma = 0;        // effective
  int k = 0;             // jobs with nonzero deviation
  int v_d = 0;           // distinct due dates
  bool collapsible = false;
  std::string to_string() const;
};

ParameterReport parameter_report(const Instance& inst);

// Dispatch order: collapsible -> moore; one due date -> common-dd;
// small k -> fpt; small gamma -> xp; few due dates within the state cap ->
// multi-dd; small n -> oracle. Throws CapExceeded with a parameter report
// when nothing applies.
Algo choose_algorithm(const Instance& inst, const SolveCaps& caps);

// True when `algo` can solve this instance under the given caps.
bool algorithm_applicable(Algo algo, const Instance& inst, const SolveCaps& caps);

struct SolveOutcome {
  EarlySetSolution solution;
  Algo algo_used = Algo::automatic;
  std::optional<std::vector<Time>> mu;  // dual-based solvers only
  double wall_time_ms = 0.0;
};

// Runs the selected (or automatically chosen) algorithm.
SolveOutcome solve_instance(const Instance& inst, const SolveConfig& config);

SolutionRecord make_record(const Instance& inst, const SolveOutcome& outcome, bool timings);

}  // namespace rsched
