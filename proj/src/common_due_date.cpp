#include "rsched/common_due_date.hpp"

#include <algorithm>

namespace rsched {

namespace {

Time single_due_date(const Instance& inst) {
  Time d = 0;
  bool first = true;
  for (const Job& j : inst.jobs) {
    if (first) {
      d = j.d;
      first = false;
    } else if (j.d != d) {
      throw std::invalid_argument("common due date required, found more than one distinct value");
    }
  }
  return d;
}

// Selects greedily along ids ordered by (weight, id); `order` must already be
// sorted that way. Returns the number selected and fills `z` when non-null.
int select_prefix(const std::vector<Time>& weight, const std::vector<int>& order, Time capacity,
                  std::vector<std::uint8_t>* z) {
  if (capacity < 0) return 0;
  Time load = 0;
  int count = 0;
  for (int id : order) {
    const Time w = weight[static_cast<std::size_t>(id) - 1];
    if (w > capacity - load) break;  // first misfit stops the selection
    load += w;
    ++count;
    if (z != nullptr) (*z)[static_cast<std::size_t>(id) - 1] = 1;
  }
  return count;
}

struct DualSearch {
  const Instance& inst;
  Time d = 0;
  Time gamma = 0;
  std::vector<int> order_deviated;  // sorted by (p_bar + p_hat, id)
  std::vector<int> order_nominal;   // sorted by (p_bar, id)

  explicit DualSearch(const Instance& i) : inst(i) {
    d = single_due_date(inst);
    gamma = inst.effective_gamma();
    const int n = inst.n();
    order_deviated.resize(static_cast<std::size_t>(n));
    order_nominal.resize(static_cast<std::size_t>(n));
    for (int id = 1; id <= n; ++id) {
      order_deviated[static_cast<std::size_t>(id) - 1] = id;
      order_nominal[static_cast<std::size_t>(id) - 1] = id;
    }
    std::sort(order_deviated.begin(), order_deviated.end(), [&](int a, int b) {
      const Time wa = inst.job(a).p_bar + inst.job(a).p_hat;
      const Time wb = inst.job(b).p_bar + inst.job(b).p_hat;
      return wa != wb ? wa < wb : a < b;
    });
    std::sort(order_nominal.begin(), order_nominal.end(), [&](int a, int b) {
      const Time wa = inst.job(a).p_bar;
      const Time wb = inst.job(b).p_bar;
      return wa != wb ? wa < wb : a < b;
    });
  }

  // Merges the two pre-sorted streams into ascending (weight, id) for this mu.
  // Jobs with p_hat > mu keep their relative order from order_deviated, the
  // rest from order_nominal.
  std::vector<int> merged_order(Time mu, const std::vector<Time>& weight) const {
    std::vector<int> merged;
    merged.reserve(weight.size());
    std::size_t a = 0;
    std::size_t b = 0;
    auto skip_a = [&] {
      while (a < order_deviated.size() && inst.job(order_deviated[a]).p_hat <= mu) ++a;
    };
    auto skip_b = [&] {
      while (b < order_nominal.size() && inst.job(order_nominal[b]).p_hat > mu) ++b;
    };
    skip_a();
    skip_b();
    while (a < order_deviated.size() || b < order_nominal.size()) {
      bool take_a;
      if (a == order_deviated.size()) {
        take_a = false;
      } else if (b == order_nominal.size()) {
        take_a = true;
      } else {
        const int ia = order_deviated[a];
        const int ib = order_nominal[b];
        const Time wa = weight[static_cast<std::size_t>(ia) - 1];
        const Time wb = weight[static_cast<std::size_t>(ib) - 1];
        take_a = wa != wb ? wa < wb : ia < ib;
      }
      if (take_a) {
        merged.push_back(order_deviated[a]);
        ++a;
        skip_a();
      } else {
        merged.push_back(order_nominal[b]);
        ++b;
        skip_b();
      }
    }
    return merged;
  }

  DualCandidate evaluate(Time mu) const {
    DualCandidate cand;
    cand.mu = mu;
    cand.capacity = d - gamma * mu;
    cand.modified_weight.resize(static_cast<std::size_t>(inst.n()));
    for (const Job& j : inst.jobs) {
      cand.modified_weight[static_cast<std::size_t>(j.id) - 1] =
          j.p_bar + std::max<Time>(j.p_hat - mu, 0);
    }
    cand.z.assign(static_cast<std::size_t>(inst.n()), 0);
    const std::vector<int> order = merged_order(mu, cand.modified_weight);
    cand.count = select_prefix(cand.modified_weight, order, cand.capacity, &cand.z);
    return cand;
  }

  // Count-only pass, no per-job bookkeeping.
  int count_for(Time mu, std::vector<Time>& weight) const {
    const Time capacity = d - gamma * mu;
    if (capacity < 0) return 0;
    for (const Job& j : inst.jobs) {
      weight[static_cast<std::size_t>(j.id) - 1] = j.p_bar + std::max<Time>(j.p_hat - mu, 0);
    }
    return select_prefix(weight, merged_order(mu, weight), capacity, nullptr);
  }
};

}  // namespace

DualCandidate greedy_for_mu(const Instance& inst, Time mu) {
  if (mu < 0) throw std::invalid_argument("mu must be nonnegative");
  return DualSearch(inst).evaluate(mu);
}

EarlySetSolution solve_common_due_date(const Instance& inst, Time* chosen_mu) {
  DualSearch search(inst);

  std::vector<Time> candidates;
  candidates.push_back(0);
  for (const Job& j : inst.jobs) candidates.push_back(j.p_hat);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  Time best_mu = 0;
  int best_count = -1;
  std::vector<Time> scratch(static_cast<std::size_t>(inst.n()));
  for (Time mu : candidates) {  // ascending, so ties keep the smallest mu
    const int count = search.count_for(mu, scratch);
    if (count > best_count) {
      best_count = count;
      best_mu = mu;
    }
  }

  const DualCandidate best = search.evaluate(best_mu);
  std::vector<int> early;
  for (int id = 1; id <= inst.n(); ++id) {
    if (best.z[static_cast<std::size_t>(id) - 1]) early.push_back(id);
  }
  if (chosen_mu != nullptr) *chosen_mu = best_mu;
  return solution_from_early_set(inst, early);
}

}  // namespace rsched
