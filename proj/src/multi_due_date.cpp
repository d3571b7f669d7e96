#include "rsched/multi_due_date.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <map>

namespace rsched {

namespace {

// q plus up to class_cap - 1 consumed-load coordinates; unused slots stay 0.
// Array ordering gives the deterministic (q, v) iteration the DP relies on.
using StateKey = std::array<Time, 3>;

struct StateEntry {
  Time f = kInfiniteTime;
  StateKey parent{};
  bool took = false;
};

using StateMap = std::map<StateKey, StateEntry>;

struct MuContext {
  std::vector<Time> mu;
  std::vector<Time> d_tilde;  // per class, d^(l) - gamma * mu_l
  bool skipped = false;       // some d_tilde negative: no state satisfies it
};

MuContext make_context(const Instance& inst, const DueDateClassing& classes,
                       const std::vector<Time>& mu) {
  MuContext ctx;
  ctx.mu = mu;
  const Time gamma = inst.effective_gamma();
  ctx.d_tilde.resize(mu.size());
  for (std::size_t l = 0; l < mu.size(); ++l) {
    ctx.d_tilde[l] = classes.d_sorted[l] - gamma * mu[l];
    if (ctx.d_tilde[l] < 0) ctx.skipped = true;
  }
  return ctx;
}

// Worst-case contribution of one early job to constraint l (1-based).
Time modified_time(const Job& j, Time mu_l) {
  return j.p_bar + std::max<Time>(j.p_hat - mu_l, 0);
}

// One DP sweep. When `stages` is non-null every stage map is retained for
// reconstruction; otherwise two rolling maps are used.
int run_dp(const Instance& inst, const DueDateClassing& classes, const std::vector<int>& edd,
           const MuContext& ctx, std::vector<StateMap>* stages) {
  const int n = inst.n();
  const int k = classes.k_d();

  StateMap prev;
  prev[StateKey{}] = StateEntry{0, StateKey{}, false};
  if (stages != nullptr) stages->push_back(prev);

  for (int pos = 0; pos < n; ++pos) {
    const Job& j = inst.job(edd[static_cast<std::size_t>(pos)]);
    const int l = classes.class_of[static_cast<std::size_t>(j.id) - 1];

    StateMap cur;
    // Skip branches first so that on equal value the job stays tardy.
    for (const auto& [key, entry] : prev) {
      cur[key] = StateEntry{entry.f, key, false};
    }
    for (const auto& [key, entry] : prev) {
      StateKey next = key;
      next[0] = key[0] + 1;
      bool fits = true;
      for (int i = l; i <= k - 1; ++i) {
        const Time load = key[static_cast<std::size_t>(i)] +
                          modified_time(j, ctx.mu[static_cast<std::size_t>(i) - 1]);
        if (load > ctx.d_tilde[static_cast<std::size_t>(i) - 1]) {
          fits = false;
          break;
        }
        next[static_cast<std::size_t>(i)] = load;
      }
      if (!fits) continue;
      const Time f = entry.f + modified_time(j, ctx.mu[static_cast<std::size_t>(k) - 1]);
      if (f > ctx.d_tilde[static_cast<std::size_t>(k) - 1]) continue;
      auto [it, inserted] = cur.try_emplace(next, StateEntry{f, key, true});
      if (!inserted && f < it->second.f) it->second = StateEntry{f, key, true};
    }
    prev.swap(cur);
    if (stages != nullptr) stages->push_back(prev);
  }

  int best_q = 0;
  for (const auto& [key, entry] : prev) {
    best_q = std::max(best_q, static_cast<int>(key[0]));
  }
  return best_q;
}

}  // namespace

DueDateClassing due_date_classes(const Instance& inst) {
  DueDateClassing out;
  for (const Job& j : inst.jobs) out.d_sorted.push_back(j.d);
  std::sort(out.d_sorted.begin(), out.d_sorted.end());
  out.d_sorted.erase(std::unique(out.d_sorted.begin(), out.d_sorted.end()), out.d_sorted.end());
  out.class_of.resize(inst.jobs.size());
  for (const Job& j : inst.jobs) {
    const auto it = std::lower_bound(out.d_sorted.begin(), out.d_sorted.end(), j.d);
    out.class_of[static_cast<std::size_t>(j.id) - 1] =
        static_cast<int>(it - out.d_sorted.begin()) + 1;
  }
  return out;
}

std::vector<MuVector> mu_grid(const Instance& inst, int k_d) {
  std::vector<Time> candidates;
  candidates.push_back(0);
  for (const Job& j : inst.jobs) candidates.push_back(j.p_hat);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<MuVector> grid;
  std::vector<Time> current(static_cast<std::size_t>(k_d), 0);
  auto recurse = [&](auto&& self, int coord) -> void {
    if (coord == k_d) {
      grid.push_back(MuVector{current});
      return;
    }
    for (Time c : candidates) {
      current[static_cast<std::size_t>(coord)] = c;
      self(self, coord + 1);
    }
  };
  recurse(recurse, 0);
  return grid;
}

EarlySetSolution solve_multi_due_date(const Instance& inst, const MultiDdLimits& limits,
                                      std::vector<Time>* chosen_mu) {
  const DueDateClassing classes = due_date_classes(inst);
  const int k = classes.k_d();
  if (k > limits.class_cap) {
    throw CapExceeded("distinct due dates = " + std::to_string(k) + " exceeds class cap " +
                      std::to_string(limits.class_cap));
  }
  if (inst.n() == 0) {
    if (chosen_mu != nullptr) chosen_mu->clear();
    return solution_from_early_set(inst, {});
  }

  // Each usable grid point contributes at least one state, so the grid size
  // alone must fit the cap before the grid is even materialized.
  {
    std::vector<Time> cands{0};
    for (const Job& j : inst.jobs) cands.push_back(j.p_hat);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    unsigned __int128 size = 1;
    for (int l = 0; l < k; ++l) {
      size *= static_cast<unsigned __int128>(cands.size());
      if (size > static_cast<unsigned __int128>(limits.state_cap)) {
        throw CapExceeded("multi due date state bound exceeds state cap " +
                          std::to_string(limits.state_cap));
      }
    }
  }

  const std::vector<int> edd = edd_permutation(inst);
  const std::vector<MuVector> grid = mu_grid(inst, k);

  // State-cap precheck: sum over usable grid points of prod(d~_l + 1), l < k.
  {
    unsigned __int128 total = 0;
    const auto cap = static_cast<unsigned __int128>(limits.state_cap);
    for (const MuVector& mv : grid) {
      const MuContext ctx = make_context(inst, classes, mv.mu);
      if (ctx.skipped) continue;
      unsigned __int128 product = 1;
      for (int l = 1; l <= k - 1 && product <= cap; ++l) {
        product *= static_cast<unsigned __int128>(ctx.d_tilde[static_cast<std::size_t>(l) - 1]) + 1;
      }
      total += product;
      if (total > cap) {
        throw CapExceeded("multi due date state bound exceeds state cap " +
                          std::to_string(limits.state_cap));
      }
    }
  }

  int best_q = -1;
  std::vector<Time> best_mu;
  for (const MuVector& mv : grid) {  // lexicographic, so ties keep the smallest mu
    const MuContext ctx = make_context(inst, classes, mv.mu);
    if (ctx.skipped) continue;
    const int q = run_dp(inst, classes, edd, ctx, nullptr);
    if (q > best_q) {
      best_q = q;
      best_mu = mv.mu;
    }
  }
  if (best_q < 0) {
    // Every grid point was skipped; mu = 0 is only skipped when some d < 0,
    // which validation excludes.
    throw std::logic_error("no usable dual vector");
  }

  // Second pass for the winning mu keeps all stages for reconstruction.
  const MuContext ctx = make_context(inst, classes, best_mu);
  std::vector<StateMap> stages;
  const int q_check = run_dp(inst, classes, edd, ctx, &stages);
  assert(q_check == best_q);
  (void)q_check;

  // Deterministic final state: max q, then minimal f, then smallest key.
  const StateMap& last = stages.back();
  StateKey key{};
  Time best_f = kInfiniteTime;
  bool found = false;
  for (const auto& [k2, entry] : last) {
    if (static_cast<int>(k2[0]) != best_q) continue;
    if (!found || entry.f < best_f) {
      found = true;
      best_f = entry.f;
      key = k2;
    }
  }
  assert(found);

  std::vector<int> early;
  for (int pos = inst.n(); pos >= 1; --pos) {
    const StateEntry& entry = stages[static_cast<std::size_t>(pos)].at(key);
    if (entry.took) early.push_back(edd[static_cast<std::size_t>(pos) - 1]);
    key = entry.parent;
  }
  std::sort(early.begin(), early.end());

  const Feasibility feas = is_feasible_early_set(inst, early);
  if (!feas.feasible) {
    throw std::logic_error("multi due date reconstruction produced an infeasible set");
  }
  if (chosen_mu != nullptr) *chosen_mu = best_mu;
  return solution_from_early_set(inst, early);
}

}  // namespace rsched
