#include "rsched/fpt.hpp"

#include <algorithm>
#include <bit>
#include <queue>

namespace rsched {

namespace {

// Max-heap order for Moore removals: largest nominal time first, ties broken
// toward the smallest id.
struct RemovalOrder {
  bool operator()(const std::pair<Time, int>& a, const std::pair<Time, int>& b) const {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  }
};

using RemovalHeap =
    std::priority_queue<std::pair<Time, int>, std::vector<std::pair<Time, int>>, RemovalOrder>;

std::vector<int> edd_sorted(const Instance& inst, std::span<const int> ids) {
  std::vector<int> order(ids.begin(), ids.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Job& ja = inst.job(a);
    const Job& jb = inst.job(b);
    return ja.d != jb.d ? ja.d < jb.d : a < b;
  });
  return order;
}

struct SweepResult {
  std::vector<int> e2;  // ascending ids
  Time e2_nominal = 0;
};

// The extended Moore pass over a precomputed EDD order. `heap_buffer` is an
// optional preallocated container for the removal heap.
std::optional<SweepResult> sweep(const Instance& inst, const std::vector<int>& edd,
                                 const SubproblemSlacks& slacks,
                                 const std::vector<std::uint8_t>& in_e1, bool strict_step10,
                                 std::vector<std::pair<Time, int>> heap_buffer = {}) {
  if (!slacks.feasible) return std::nullopt;
  const std::size_t k_prime = slacks.e1.size();

  // Slack bound applied while l_prime E1 jobs have been passed. The default
  // charges only the constraints still ahead; the strict variant also charges
  // the one just passed.
  auto slack_bound = [&](std::size_t l_prime) -> Time {
    if (strict_step10 && l_prime >= 1) {
      return slacks.suffix_min[l_prime - 1];
    }
    return l_prime < k_prime ? slacks.suffix_min[l_prime] : kInfiniteTime;
  };

  heap_buffer.clear();
  RemovalHeap kept(RemovalOrder{}, std::move(heap_buffer));
  Time load = 0;
  std::size_t l_prime = 0;
  for (int id : edd) {
    const Job& j = inst.job(id);
    if (in_e1[static_cast<std::size_t>(id)]) {
      ++l_prime;
      continue;
    }
    if (j.p_hat > 0) continue;  // uncertain job forced tardy in this subproblem
    kept.emplace(j.p_bar, id);
    load += j.p_bar;
    const Time e1_nominal = l_prime > 0 ? slacks.e1_nominal_prefix[l_prime - 1] : 0;
    const Time e1_dev = l_prime > 0 ? slacks.top_dev[l_prime - 1] : 0;
    if (load + e1_nominal + e1_dev > j.d || load > slack_bound(l_prime)) {
      load -= kept.top().first;
      kept.pop();
    }
  }

  SweepResult out;
  out.e2_nominal = load;
  out.e2.reserve(kept.size());
  while (!kept.empty()) {
    out.e2.push_back(kept.top().second);
    kept.pop();
  }
  std::sort(out.e2.begin(), out.e2.end());
  return out;
}

}  // namespace

JobPartition job_partition(const Instance& inst) {
  JobPartition out;
  for (const Job& j : inst.jobs) {
    (j.p_hat > 0 ? out.j1 : out.j2).push_back(j.id);
  }
  return out;
}

SubproblemSlacks feasibility_and_slacks(const Instance& inst, std::span<const int> e1) {
  SubproblemSlacks out;
  out.e1 = edd_sorted(inst, e1);
  const std::size_t k_prime = out.e1.size();
  out.top_dev.resize(k_prime);
  out.delta.resize(k_prime);
  out.suffix_min.resize(k_prime);
  out.e1_nominal_prefix.resize(k_prime);

  const Time gamma = inst.effective_gamma();
  // Running top-gamma structure over the E1 prefix.
  std::priority_queue<Time, std::vector<Time>, std::greater<>> kept;
  Time dev_sum = 0;
  Time nominal = 0;
  for (std::size_t l = 0; l < k_prime; ++l) {
    const Job& j = inst.job(out.e1[l]);
    nominal += j.p_bar;
    if (gamma > 0) {
      if (static_cast<Time>(kept.size()) < gamma) {
        kept.push(j.p_hat);
        dev_sum += j.p_hat;
      } else if (j.p_hat > kept.top()) {
        dev_sum += j.p_hat - kept.top();
        kept.pop();
        kept.push(j.p_hat);
      }
    }
    out.e1_nominal_prefix[l] = nominal;
    out.top_dev[l] = dev_sum;
    out.delta[l] = j.d - nominal - dev_sum;
    if (out.delta[l] < 0 && out.feasible) {
      out.feasible = false;
      out.first_violator = j.id;
    }
  }
  for (std::size_t l = k_prime; l-- > 0;) {
    out.suffix_min[l] = out.delta[l];
    if (l + 1 < k_prime) out.suffix_min[l] = std::min(out.suffix_min[l], out.suffix_min[l + 1]);
  }
  return out;
}

EarlySetSolution solve_moore(const Instance& inst) {
  for (const Job& j : inst.jobs) {
    if (j.p_hat != 0) {
      throw std::invalid_argument("moore requires zero deviations (job " + std::to_string(j.id) +
                                  " has p_hat > 0)");
    }
  }
  const std::vector<int> edd = edd_permutation(inst);

  RemovalHeap kept;
  Time load = 0;
  for (int id : edd) {
    const Job& j = inst.job(id);
    kept.emplace(j.p_bar, id);
    load += j.p_bar;
    if (load > j.d) {
      load -= kept.top().first;
      kept.pop();
    }
  }

  std::vector<int> early;
  early.reserve(kept.size());
  while (!kept.empty()) {
    early.push_back(kept.top().second);
    kept.pop();
  }
  std::sort(early.begin(), early.end());
  return solution_from_early_set(inst, early);
}

std::optional<std::vector<int>> extended_moore(const Instance& inst,
                                               const SubproblemSlacks& slacks,
                                               bool strict_step10) {
  std::vector<std::uint8_t> in_e1(static_cast<std::size_t>(inst.n()) + 1, 0);
  for (int id : slacks.e1) in_e1[static_cast<std::size_t>(id)] = 1;
  auto result = sweep(inst, edd_permutation(inst), slacks, in_e1, strict_step10);
  if (!result.has_value()) return std::nullopt;
  return std::move(result->e2);
}

EarlySetSolution solve_fpt(const Instance& inst, const FptOptions& opts) {
  const JobPartition parts = job_partition(inst);
  const int k = parts.k();
  const Time gamma = inst.effective_gamma();

  if (gamma >= k || gamma == 0) {
    // Deterministic collapse: with gamma >= k every uncertain job deviates in
    // its worst case; with gamma == 0 none does.
    Instance collapsed = inst;
    for (Job& j : collapsed.jobs) {
      if (gamma > 0) j.p_bar += j.p_hat;
      j.p_hat = 0;
    }
    const EarlySetSolution nominal = solve_moore(collapsed);
    return solution_from_early_set(inst, nominal.early);
  }
  if (k > opts.k_cap || k > 30) {
    throw CapExceeded("uncertain jobs k = " + std::to_string(k) + " exceeds cap " +
                      std::to_string(std::min(opts.k_cap, 30)));
  }

  const std::vector<int> edd = edd_permutation(inst);

  // E1 candidates as bitmasks over parts.j1 (ascending ids), enumerated by
  // ascending popcount then mask value (Gosper's hack within each popcount
  // class) so the monotone infeasibility pruning sees every subset before its
  // supersets.
  const std::uint32_t limit = std::uint32_t{1} << k;
  auto next_same_popcount = [](std::uint32_t v) -> std::uint32_t {
    const std::uint32_t u = v & (~v + 1);
    const std::uint32_t w = v + u;
    return w | (((v ^ w) >> 2) / u);
  };

  // With popcount-ordered enumeration, an unpruned infeasible mask is minimal
  // (all of its subsets were already seen and feasible). The list is advisory;
  // it stops growing once scanning it would cost more than it saves.
  constexpr std::size_t kMaxRecorded = 1024;
  std::vector<std::uint32_t> infeasible_masks;

  bool have_best = false;
  std::size_t best_card = 0;
  Time best_nominal = 0;
  std::vector<int> best_e1, best_e2;

  std::vector<int> e1;
  std::vector<std::uint8_t> in_e1(static_cast<std::size_t>(inst.n()) + 1, 0);
  auto visit = [&](std::uint32_t mask) {
    if (opts.prune) {
      for (std::uint32_t bad : infeasible_masks) {
        if ((mask & bad) == bad) return;
      }
    }

    e1.clear();
    for (std::uint32_t m = mask; m != 0; m &= m - 1) {
      e1.push_back(parts.j1[static_cast<std::size_t>(std::countr_zero(m))]);
    }
    for (int id : e1) in_e1[static_cast<std::size_t>(id)] = 1;

    std::vector<std::pair<Time, int>> buffer;
    buffer.reserve(static_cast<std::size_t>(inst.n()));
    const SubproblemSlacks slacks = feasibility_and_slacks(inst, e1);
    const auto result =
        sweep(inst, edd, slacks, in_e1, opts.strict_paper_step10, std::move(buffer));
    for (int id : e1) in_e1[static_cast<std::size_t>(id)] = 0;

    if (!result.has_value()) {
      if (opts.prune && infeasible_masks.size() < kMaxRecorded) {
        infeasible_masks.push_back(mask);
      }
      return;
    }

    const std::size_t card = e1.size() + result->e2.size();
    const Time nominal =
        (e1.empty() ? 0 : slacks.e1_nominal_prefix.back()) + result->e2_nominal;
    if (have_best && card < best_card) return;
    bool better = !have_best || card > best_card || nominal < best_nominal;
    if (!better && nominal == best_nominal) {
      // Full tie: lexicographically smallest merged id set wins.
      std::vector<int> merged = slacks.e1;
      merged.insert(merged.end(), result->e2.begin(), result->e2.end());
      std::sort(merged.begin(), merged.end());
      std::vector<int> best_merged = best_e1;
      best_merged.insert(best_merged.end(), best_e2.begin(), best_e2.end());
      std::sort(best_merged.begin(), best_merged.end());
      better = std::lexicographical_compare(merged.begin(), merged.end(), best_merged.begin(),
                                            best_merged.end());
    }
    if (better) {
      have_best = true;
      best_card = card;
      best_nominal = nominal;
      best_e1 = slacks.e1;
      best_e2 = result->e2;
    }
  };

  visit(0);
  for (int t = 1; t <= k; ++t) {
    std::uint32_t mask = (std::uint32_t{1} << t) - 1;
    while (mask < limit) {
      visit(mask);
      const std::uint32_t next = next_same_popcount(mask);
      if (next <= mask) break;
      mask = next;
    }
  }

  // E1 = empty set is always feasible, so a best solution exists.
  std::vector<int> early = best_e1;
  early.insert(early.end(), best_e2.begin(), best_e2.end());
  std::sort(early.begin(), early.end());
  return solution_from_early_set(inst, early);
}

}  // namespace rsched
