#include "rsched/core.hpp"

#include <algorithm>
#include <queue>

namespace rsched {

namespace {

// Running sum of the min(gamma, count) largest values pushed so far.
class TopGammaSum {
 public:
  explicit TopGammaSum(Time gamma) : gamma_(gamma) {}

  void push(Time p_hat) {
    if (gamma_ == 0) return;
    if (static_cast<Time>(kept_.size()) < gamma_) {
      kept_.push(p_hat);
      sum_ += p_hat;
    } else if (p_hat > kept_.top()) {
      sum_ += p_hat - kept_.top();
      kept_.pop();
      kept_.push(p_hat);
    }
  }

  Time sum() const { return sum_; }

 private:
  Time gamma_;
  Time sum_ = 0;
  std::priority_queue<Time, std::vector<Time>, std::greater<>> kept_;  // min-heap
};

std::vector<int> sort_edd(const Instance& inst, std::span<const int> ids) {
  std::vector<int> order(ids.begin(), ids.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Job& ja = inst.job(a);
    const Job& jb = inst.job(b);
    return ja.d != jb.d ? ja.d < jb.d : ja.id < jb.id;
  });
  return order;
}

void check_ids_in_range(const Instance& inst, std::span<const int> ids) {
  for (int id : ids) {
    if (id < 1 || id > inst.n()) {
      throw std::invalid_argument("job id " + std::to_string(id) + " out of range");
    }
  }
}

}  // namespace

Time EvaluatedSchedule::worst_completion_of(int id) const {
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] == id) return worst_completion[i];
  }
  throw std::invalid_argument("job id not in schedule");
}

bool EvaluatedSchedule::is_tardy(int id) const {
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] == id) return tardy_flag[i] != 0;
  }
  throw std::invalid_argument("job id not in schedule");
}

Instance validate_instance(Instance raw) {
  const int n = raw.n();
  if (raw.gamma < 0) throw std::invalid_argument("negative value: gamma");

  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) + 1, 0);
  Time max_p_bar = 0;
  Time max_p_hat = 0;
  for (const Job& j : raw.jobs) {
    if (j.p_bar < 0 || j.p_hat < 0 || j.d < 0) {
      throw std::invalid_argument("negative value: job " + std::to_string(j.id));
    }
    if (j.id < 1 || j.id > n) {
      throw std::invalid_argument("job id " + std::to_string(j.id) +
                                  " out of range 1.." + std::to_string(n));
    }
    if (seen[static_cast<std::size_t>(j.id)]) {
      throw std::invalid_argument("duplicate job id " + std::to_string(j.id));
    }
    seen[static_cast<std::size_t>(j.id)] = 1;
    max_p_bar = std::max(max_p_bar, j.p_bar);
    max_p_hat = std::max(max_p_hat, j.p_hat);
  }

  // Every worst-case completion time is bounded by n * (max p_bar + max p_hat);
  // requiring that bound to fit in 63 bits makes all downstream sums safe.
  const unsigned __int128 bound =
      static_cast<unsigned __int128>(n) *
      (static_cast<unsigned __int128>(max_p_bar) + static_cast<unsigned __int128>(max_p_hat));
  if (bound > static_cast<unsigned __int128>(std::numeric_limits<Time>::max())) {
    throw std::invalid_argument("overflow risk: n * (max p_bar + max p_hat) exceeds 63 bits");
  }

  std::sort(raw.jobs.begin(), raw.jobs.end(),
            [](const Job& a, const Job& b) { return a.id < b.id; });
  return raw;
}

std::vector<int> edd_permutation(const Instance& inst) {
  std::vector<int> ids(static_cast<std::size_t>(inst.n()));
  for (int i = 0; i < inst.n(); ++i) ids[static_cast<std::size_t>(i)] = i + 1;
  return sort_edd(inst, ids);
}

Time top_gamma_deviation_sum(const Instance& inst, std::span<const int> ids) {
  check_ids_in_range(inst, ids);
  TopGammaSum acc(inst.effective_gamma());
  for (int id : ids) acc.push(inst.job(id).p_hat);
  return acc.sum();
}

EvaluatedSchedule evaluate_schedule(const Instance& inst, const std::vector<int>& sigma) {
  const int n = inst.n();
  if (static_cast<int>(sigma.size()) != n) {
    throw std::invalid_argument("sigma is not a permutation: wrong length");
  }
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int id : sigma) {
    if (id < 1 || id > n || seen[static_cast<std::size_t>(id)]) {
      throw std::invalid_argument("sigma is not a permutation");
    }
    seen[static_cast<std::size_t>(id)] = 1;
  }

  EvaluatedSchedule out;
  out.sigma = sigma;
  out.worst_completion.resize(sigma.size());
  out.tardy_flag.resize(sigma.size());

  TopGammaSum deviations(inst.effective_gamma());
  Time nominal = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const Job& j = inst.job(sigma[i]);
    nominal += j.p_bar;
    deviations.push(j.p_hat);
    out.worst_completion[i] = nominal + deviations.sum();
    out.tardy_flag[i] = out.worst_completion[i] > j.d ? 1 : 0;
    out.objective += out.tardy_flag[i];
  }
  return out;
}

Feasibility is_feasible_early_set(const Instance& inst, std::span<const int> early_ids) {
  check_ids_in_range(inst, early_ids);
  const std::vector<int> order = sort_edd(inst, early_ids);

  TopGammaSum deviations(inst.effective_gamma());
  Time nominal = 0;
  for (int id : order) {
    const Job& j = inst.job(id);
    nominal += j.p_bar;
    deviations.push(j.p_hat);
    if (nominal + deviations.sum() > j.d) return {false, id};
  }
  return {true, 0};
}

EarlySetSolution solution_from_early_set(const Instance& inst, std::span<const int> early_ids) {
  check_ids_in_range(inst, early_ids);
  const std::vector<int> order = sort_edd(inst, early_ids);

  EarlySetSolution sol;
  sol.early.assign(early_ids.begin(), early_ids.end());
  std::sort(sol.early.begin(), sol.early.end());
  sol.objective = inst.n() - static_cast<int>(sol.early.size());

  sol.sigma = order;
  sol.certificate.reserve(order.size());
  TopGammaSum deviations(inst.effective_gamma());
  Time nominal = 0;
  for (int id : order) {
    const Job& j = inst.job(id);
    nominal += j.p_bar;
    deviations.push(j.p_hat);
    const Time completion = nominal + deviations.sum();
    if (completion > j.d) {
      throw std::invalid_argument("infeasible early set: job " + std::to_string(id));
    }
    sol.certificate.push_back(completion);
  }

  std::vector<std::uint8_t> is_early(static_cast<std::size_t>(inst.n()) + 1, 0);
  for (int id : sol.early) is_early[static_cast<std::size_t>(id)] = 1;
  for (int id = 1; id <= inst.n(); ++id) {
    if (!is_early[static_cast<std::size_t>(id)]) sol.sigma.push_back(id);
  }
  return sol;
}

}  // namespace rsched
