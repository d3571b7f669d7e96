#pragma once

#include <cstdint>
#include <vector>

#include "rsched/core.hpp"

namespace rsched {

// Jobs grouped by distinct due date, ascending. EDD order makes the classes
// contiguous blocks.
struct DueDateClassing {
  std::vector<Time> d_sorted;   // distinct due dates, ascending
  std::vector<int> class_of;    // indexed by id - 1, 1-based class
  int k_d() const { return static_cast<int>(d_sorted.size()); }
};

DueDateClassing due_date_classes(const Instance& inst);

// One candidate vector of dual values, one coordinate per due-date class.
struct MuVector {
  std::vector<Time> mu;
};

// Cartesian grid over the deduplicated candidate list {0} + {p_hat_j},
// lexicographic order (first coordinate varies slowest).
std::vector<MuVector> mu_grid(const Instance& inst, int k_d);

struct MultiDdLimits {
  int class_cap = 3;
  std::int64_t state_cap = 10'000'000;  // sum over the grid of prod(d~_l + 1)
};

// Exact solver for a bounded number of distinct due dates. For each mu in the
// grid runs a DP over (jobs, early count, per-class consumed load) states and
// takes the best early count; ties prefer the lexicographically smallest mu.
// Throws CapExceeded with the violated cap named.
EarlySetSolution solve_multi_due_date(const Instance& inst, const MultiDdLimits& limits = {},
                                      std::vector<Time>* chosen_mu = nullptr);

}  // namespace rsched
