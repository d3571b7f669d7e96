#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rsched/core.hpp"

namespace rsched {

// Split between jobs that can deviate and jobs that cannot.
struct JobPartition {
  std::vector<int> j1;  // p_hat > 0, ascending ids
  std::vector<int> j2;  // p_hat == 0, ascending ids
  int k() const { return static_cast<int>(j1.size()); }
};

JobPartition job_partition(const Instance& inst);

// Slack data for a forced-early subset E1 of the uncertain jobs.
// delta[l] is how much zero-deviation processing fits before E1(l+1) without
// making it tardy; suffix_min[l] = min of delta[l..k'-1].
struct SubproblemSlacks {
  std::vector<int> e1;          // EDD order (due date, then id)
  std::vector<Time> top_dev;    // running top-gamma deviation sums over e1 prefixes
  std::vector<Time> delta;
  std::vector<Time> suffix_min;
  std::vector<Time> e1_nominal_prefix;  // prefix sums of p_bar over e1
  bool feasible = true;
  int first_violator = 0;
};

SubproblemSlacks feasibility_and_slacks(const Instance& inst, std::span<const int> e1);

// Classical Moore-Hodgson. Requires every p_hat to be zero; callers collapse
// gamma >= k instances by folding deviations into the nominal times first.
EarlySetSolution solve_moore(const Instance& inst);

// One pass of the extended Moore sweep for a precomputed subproblem. Returns
// the compact early subset of the zero-deviation jobs (maximum cardinality,
// then minimum total processing time), or nullopt if E1 itself is infeasible.
// strict_step10 charges new jobs against the slack of the E1 job just passed
// as well, matching the literal slack-bound indexing.
std::optional<std::vector<int>> extended_moore(const Instance& inst,
                                               const SubproblemSlacks& slacks,
                                               bool strict_step10 = false);

struct FptOptions {
  int k_cap = 20;
  bool strict_paper_step10 = false;
  bool prune = true;  // skip supersets of infeasible forced-early sets
};

// Exact solver parameterized by the number of uncertain jobs: enumerates all
// forced-early subsets of them and completes each with extended_moore.
// Instances with gamma >= k (or gamma == 0) collapse to a deterministic
// Moore run instead. Throws CapExceeded when k exceeds opts.k_cap.
EarlySetSolution solve_fpt(const Instance& inst, const FptOptions& opts = {});

}  // namespace rsched
