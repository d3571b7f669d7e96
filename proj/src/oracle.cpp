#include "rsched/oracle.hpp"

#include <algorithm>
#include <bit>

namespace rsched {

namespace {

// Fixed-capacity running top-gamma sum for the enumeration hot loop.
// `kept` holds the currently counted deviations in ascending order.
struct SmallTopGamma {
  Time kept[64];
  int size = 0;
  int cap = 0;
  Time sum = 0;

  void reset(int gamma) {
    size = 0;
    cap = gamma;
    sum = 0;
  }

  void push(Time v) {
    if (cap == 0) return;
    if (size < cap) {
      int pos = size++;
      while (pos > 0 && kept[pos - 1] > v) {
        kept[pos] = kept[pos - 1];
        --pos;
      }
      kept[pos] = v;
      sum += v;
    } else if (v > kept[0]) {
      sum += v - kept[0];
      int pos = 0;
      while (pos + 1 < size && kept[pos + 1] < v) {
        kept[pos] = kept[pos + 1];
        ++pos;
      }
      kept[pos] = v;
    }
  }
};

// Lexicographic order on ascending id vectors of equal length.
bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

OracleReport solve_bruteforce(const Instance& inst, const OracleLimits& limits) {
  const int n = inst.n();
  if (n > limits.max_n || n > 62) {
    throw CapExceeded("oracle limit: n = " + std::to_string(n) + " exceeds " +
                      std::to_string(std::min(limits.max_n, 62)));
  }
  const int gamma = static_cast<int>(inst.effective_gamma());

  // EDD-ordered job data; mask bit t corresponds to EDD position t.
  const std::vector<int> edd = edd_permutation(inst);
  std::vector<Time> p_bar(edd.size()), p_hat(edd.size()), due(edd.size());
  for (std::size_t t = 0; t < edd.size(); ++t) {
    const Job& j = inst.job(edd[t]);
    p_bar[t] = j.p_bar;
    p_hat[t] = j.p_hat;
    due[t] = j.d;
  }

  std::uint64_t best_mask = 0;
  int best_card = 0;
  Time best_nominal = 0;
  std::vector<int> best_ids;  // materialized lazily for lexicographic ties

  SmallTopGamma top;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Time nominal = 0;
    top.reset(gamma);
    int card = 0;
    bool feasible = true;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      const int t = std::countr_zero(m);
      nominal += p_bar[static_cast<std::size_t>(t)];
      top.push(p_hat[static_cast<std::size_t>(t)]);
      if (nominal + top.sum > due[static_cast<std::size_t>(t)]) {
        feasible = false;
        break;
      }
      ++card;
    }
    if (!feasible) continue;
    if (card < best_card) continue;
    if (card > best_card || nominal < best_nominal) {
      best_mask = mask;
      best_card = card;
      best_nominal = nominal;
      best_ids.clear();
      continue;
    }
    if (nominal > best_nominal) continue;
    // Full tie on (cardinality, nominal): lexicographically smallest id set.
    if (best_ids.empty()) {
      for (std::uint64_t m = best_mask; m != 0; m &= m - 1) {
        best_ids.push_back(edd[static_cast<std::size_t>(std::countr_zero(m))]);
      }
      std::sort(best_ids.begin(), best_ids.end());
    }
    std::vector<int> ids;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      ids.push_back(edd[static_cast<std::size_t>(std::countr_zero(m))]);
    }
    std::sort(ids.begin(), ids.end());
    if (lex_less(ids, best_ids)) {
      best_mask = mask;
      best_ids = std::move(ids);
    }
  }

  std::vector<int> early;
  for (std::uint64_t m = best_mask; m != 0; m &= m - 1) {
    early.push_back(edd[static_cast<std::size_t>(std::countr_zero(m))]);
  }
  std::sort(early.begin(), early.end());

  OracleReport report;
  report.best = solution_from_early_set(inst, early);
  report.optimum_cardinality = best_card;
  report.explored = total;
  return report;
}

EvaluatedSchedule check_by_scenario_enumeration(const Instance& inst,
                                                const std::vector<int>& sigma,
                                                const OracleLimits& limits) {
  const int n = inst.n();
  const int gamma = static_cast<int>(inst.effective_gamma());

  // Total scenario count: sum of C(n, t) for t = 0..gamma.
  {
    const auto limit = static_cast<unsigned __int128>(limits.max_scenarios);
    unsigned __int128 count = 0;
    unsigned __int128 binom = 1;  // C(n, 0)
    for (int t = 0; t <= gamma && count <= limit; ++t) {
      count += binom;
      binom = binom * static_cast<unsigned __int128>(n - t) /
              static_cast<unsigned __int128>(t + 1);
    }
    if (count > limit) {
      throw CapExceeded("scenario count exceeds " + std::to_string(limits.max_scenarios));
    }
  }

  EvaluatedSchedule out = evaluate_schedule(inst, sigma);  // validates sigma, fixes shape
  std::fill(out.worst_completion.begin(), out.worst_completion.end(), Time{0});
  std::fill(out.tardy_flag.begin(), out.tardy_flag.end(), std::uint8_t{0});
  out.objective = 0;

  std::vector<int> chosen;
  auto apply_scenario = [&]() {
    Time total = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const Job& j = inst.job(sigma[i]);
      total += j.p_bar;
      if (std::binary_search(chosen.begin(), chosen.end(), sigma[i])) total += j.p_hat;
      out.worst_completion[i] = std::max(out.worst_completion[i], total);
    }
  };

  // Enumerate all deviating sets of size 0..gamma (ids ascending within each).
  auto recurse = [&](auto&& self, int next_id, int remaining) -> void {
    apply_scenario();
    if (remaining == 0) return;
    for (int id = next_id; id <= n; ++id) {
      chosen.push_back(id);
      self(self, id + 1, remaining - 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 1, gamma);

  for (std::size_t i = 0; i < sigma.size(); ++i) {
    out.tardy_flag[i] = out.worst_completion[i] > inst.job(sigma[i]).d ? 1 : 0;
    out.objective += out.tardy_flag[i];
  }
  return out;
}

}  // namespace rsched
