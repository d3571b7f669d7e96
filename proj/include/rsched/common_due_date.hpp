#pragma once

#include <cstdint>
#include <vector>

#include "rsched/core.hpp"

namespace rsched {

// Knapsack view of the common-due-date case for one fixed dual value mu:
// job weight becomes p_bar + max(p_hat - mu, 0), capacity d - gamma * mu.
struct DualCandidate {
  Time mu = 0;
  std::vector<Time> modified_weight;  // indexed by id - 1
  Time capacity = 0;                  // may be negative
  std::vector<std::uint8_t> z;        // selection indicator, indexed by id - 1
  int count = 0;
};

// Prefix-greedy selection in ascending (modified weight, id) order: jobs are
// taken while the cumulative weight fits, and selection stops permanently at
// the first job that does not fit. Requires mu >= 0 and a single distinct
// due date.
DualCandidate greedy_for_mu(const Instance& inst, Time mu);

// Exact solver for instances where all jobs share one due date. Scans the
// dual candidates {0} + {p_hat_j}, each evaluated by merging two pre-sorted
// orders (by p_bar + p_hat and by p_bar), and keeps the best count, smallest
// mu on ties. Throws std::invalid_argument when due dates differ.
EarlySetSolution solve_common_due_date(const Instance& inst, Time* chosen_mu = nullptr);

}  // namespace rsched
