#pragma once

#include <cstdint>

#include "rsched/core.hpp"

namespace rsched {

struct OracleLimits {
  int max_n = 22;
  std::int64_t max_scenarios = 1'000'000;
};

// Ground truth from exhaustive enumeration.
struct OracleReport {
  EarlySetSolution best;
  int optimum_cardinality = 0;
  std::uint64_t explored = 0;  // candidate early sets examined (2^n)
};

// Enumerates every early-set candidate and keeps the feasible one that is
// best under (max cardinality, min total nominal time, lexicographically
// smallest id set). Throws CapExceeded when n exceeds limits.max_n.
OracleReport solve_bruteforce(const Instance& inst, const OracleLimits& limits = {});

// Evaluates a permutation by explicit maximization over every scenario with
// at most gamma deviating jobs. Must agree with evaluate_schedule.
// Throws CapExceeded when the scenario count exceeds limits.max_scenarios.
EvaluatedSchedule check_by_scenario_enumeration(const Instance& inst,
                                                const std::vector<int>& sigma,
                                                const OracleLimits& limits = {});

}  // namespace rsched
