#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsched {

using Time = std::int64_t;

// Sentinel for dynamic-programming values. Strictly larger than any feasible
// total processing time: validation guarantees n * (max p_bar + max p_hat)
// fits in 63 bits, so regular arithmetic on real totals never reaches it.
inline constexpr Time kInfiniteTime = std::numeric_limits<Time>::max();

// Thrown when an instance exceeds a configured tractability limit
// (oracle size, robustness budget, state-space bound, ...).
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A job with a nominal processing time, a worst-case deviation on top of it,
// and a due date. All times are nonnegative integers.
struct Job {
  int id = 0;      // 1-based, unique within an instance
  Time p_bar = 0;  // nominal processing time
  Time p_hat = 0;  // maximal deviation added to p_bar
  Time d = 0;      // due date
};

// A single-machine instance under budgeted uncertainty: in any realization at
// most `gamma` jobs run at p_bar + p_hat, all others at p_bar.
struct Instance {
  std::vector<Job> jobs;  // sorted by id once validated
  Time gamma = 0;         // budget as given; values above n behave like n

  int n() const { return static_cast<int>(jobs.size()); }

  // The budget never binds beyond the number of jobs.
  Time effective_gamma() const {
    return gamma < static_cast<Time>(n()) ? gamma : static_cast<Time>(n());
  }

  // Requires a validated instance (ids are exactly 1..n).
  const Job& job(int id) const { return jobs[static_cast<std::size_t>(id) - 1]; }
};

// One realization of processing times: jobs listed in `deviating` run at
// p_bar + p_hat, everything else at p_bar. |deviating| <= gamma.
struct Scenario {
  std::vector<int> deviating;  // sorted job ids
};

// Strict total order behind every "the Gamma largest deviations" selection:
// p_hat descending, ties by id ascending. The summed value is order
// independent; the order fixes one canonical witness set.
inline bool deviation_precedes(const Job& a, const Job& b) {
  return a.p_hat != b.p_hat ? a.p_hat > b.p_hat : a.id < b.id;
}

// A schedule together with its worst-case evaluation. Each job's completion
// time is maximized independently over all realizations, so the worst cases
// of different jobs may come from different scenarios.
struct EvaluatedSchedule {
  std::vector<int> sigma;                 // processing order, job ids
  std::vector<Time> worst_completion;    // aligned with sigma
  std::vector<std::uint8_t> tardy_flag;  // aligned with sigma; 1 iff worst_completion > d
  int objective = 0;                     // number of tardy jobs

  Time worst_completion_of(int id) const;
  bool is_tardy(int id) const;
};

// A solution in early-set form: the early jobs run first in EDD order
// (ties by id), the tardy jobs follow in id order.
struct EarlySetSolution {
  std::vector<int> early;        // sorted ascending
  std::vector<int> sigma;        // canonical permutation
  std::vector<Time> certificate; // worst-case completion of sigma[i], i < |early|
  int objective = 0;             // n - |early|
};

struct Feasibility {
  bool feasible = true;
  int first_violator = 0;  // earliest (in EDD order) job whose deadline breaks; 0 if none
};

// Checks domain constraints and normalizes job order to ascending id.
// Rejects negative fields, duplicate or out-of-range ids, and instances whose
// worst-case makespan could overflow 63-bit arithmetic.
// Throws std::invalid_argument with a diagnostic.
Instance validate_instance(Instance raw);

// Job ids sorted by (due date, id) ascending.
std::vector<int> edd_permutation(const Instance& inst);

// Sum of the min(gamma, |ids|) largest deviations among `ids`.
Time top_gamma_deviation_sum(const Instance& inst, std::span<const int> ids);

// Worst-case evaluation of an arbitrary permutation of [n].
// Throws std::invalid_argument if sigma is not a permutation.
EvaluatedSchedule evaluate_schedule(const Instance& inst, const std::vector<int>& sigma);

// True iff every EDD-prefix of `early_ids` finishes by its last job's due
// date in the worst case. On failure reports the earliest violating job.
Feasibility is_feasible_early_set(const Instance& inst, std::span<const int> early_ids);

// Builds the canonical solution for a feasible early set.
// Throws std::invalid_argument if the set is infeasible.
EarlySetSolution solution_from_early_set(const Instance& inst, std::span<const int> early_ids);

}  // namespace rsched
