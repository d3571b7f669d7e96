#pragma once

#include <cstdint>
#include <vector>

#include "rsched/core.hpp"

namespace rsched {

struct XpOptions {
  Time gamma_cap = 4;
  std::int64_t state_cap = 10'000'000;  // bound on total stored DP entries
  bool keep_stage_values = false;       // retain every stage for inspection
};

// Dynamic program over states (stage j, early count ell, deviating set pi).
// Stages walk the jobs in EDD order; pi is the canonical set of the
// min(ell, gamma) largest-deviation early jobs (order: p_hat desc, id asc).
// The table value F_j(ell, pi) is the minimal total nominal time of an early
// set realizing that state, or kInfiniteTime.
class XpTable {
 public:
  static XpTable build(const Instance& inst, const XpOptions& opts = {});

  int n() const { return n_; }
  int gamma() const { return gamma_; }

  // stage -> original job id, EDD order (1-based stages).
  const std::vector<int>& edd_order() const { return edd_; }

  // F_stage(ell, pi) with pi given as 1-based stage indices. Non-canonical
  // states report kInfiniteTime. Stages below n require keep_stage_values.
  Time value(int stage, int ell, std::vector<int> pi_stages) const;

  // Largest early count with a finite final state.
  int max_early() const;

  // One optimal early set (original ids) for the given early count.
  std::vector<int> reconstruct_early(int ell) const;

  std::uint64_t states_per_stage() const { return states_per_stage_; }

 private:
  int n_ = 0;
  int gamma_ = 0;
  std::vector<int> edd_;
  std::vector<std::uint64_t> offsets_;       // subsets of size < t precede offsets_[t]
  std::uint64_t n_subsets_ = 0;
  std::vector<std::vector<Time>> values_;    // final stage always; all stages if kept
  bool all_stages_ = false;
  std::vector<std::vector<std::int32_t>> parents_;  // per stage 1..n
  std::uint64_t states_per_stage_ = 0;

  friend struct XpBuilder;

  std::uint64_t subset_index(const std::vector<int>& members_ascending) const;
};

// Solves the instance exactly and reconstructs an optimal early set.
// Throws CapExceeded if effective gamma exceeds opts.gamma_cap or the state
// space would exceed opts.state_cap.
EarlySetSolution solve_xp(const Instance& inst, const XpOptions& opts = {});

}  // namespace rsched
