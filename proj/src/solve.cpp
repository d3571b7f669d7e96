#include "rsched/solve.hpp"

#include <chrono>

#include "rsched/common_due_date.hpp"
#include "rsched/fpt.hpp"
#include "rsched/multi_due_date.hpp"
#include "rsched/oracle.hpp"
#include "rsched/xp.hpp"

namespace rsched {

namespace {

bool multi_dd_within_caps(const Instance& inst, const SolveCaps& caps) {
  const DueDateClassing classes = due_date_classes(inst);
  const int k = classes.k_d();
  if (k > caps.dd_class_cap || k == 0) return false;
  const Time gamma = inst.effective_gamma();
  const auto cap = static_cast<unsigned __int128>(caps.state_cap);
  {
    // Grid size itself must fit the cap before materializing the grid.
    std::vector<Time> cands{0};
    for (const Job& j : inst.jobs) cands.push_back(j.p_hat);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    unsigned __int128 size = 1;
    for (int l = 0; l < k; ++l) {
      size *= static_cast<unsigned __int128>(cands.size());
      if (size > cap) return false;
    }
  }
  unsigned __int128 total = 0;
  for (const MuVector& mv : mu_grid(inst, k)) {
    bool usable = true;
    unsigned __int128 product = 1;
    for (int l = 1; l <= k && usable; ++l) {
      const Time d_tilde = classes.d_sorted[static_cast<std::size_t>(l) - 1] -
                           gamma * mv.mu[static_cast<std::size_t>(l) - 1];
      if (d_tilde < 0) usable = false;
      if (l <= k - 1 && usable) {
        product *= static_cast<unsigned __int128>(d_tilde) + 1;
        if (product > cap) return false;
      }
    }
    if (!usable) continue;
    total += product;
    if (total > cap) return false;
  }
  return true;
}

bool xp_within_caps(const Instance& inst, const SolveCaps& caps) {
  const Time gamma = inst.effective_gamma();
  if (gamma > caps.gamma_cap) return false;
  // Total DP entries: subsets of size <= gamma times (n+1)^2.
  const int n = inst.n();
  unsigned __int128 subsets = 0;
  unsigned __int128 binom = 1;
  for (int t = 0; t <= gamma; ++t) {
    subsets += binom;
    binom = binom * static_cast<unsigned __int128>(n - t) / static_cast<unsigned __int128>(t + 1);
  }
  const unsigned __int128 entries = subsets * static_cast<unsigned __int128>(n + 1) *
                                    static_cast<unsigned __int128>(n + 1);
  return entries <= static_cast<unsigned __int128>(caps.state_cap);
}

}  // namespace

Algo algo_from_name(const std::string& name) {
  if (name == "auto") return Algo::automatic;
  if (name == "oracle") return Algo::oracle;
  if (name == "xp") return Algo::xp;
  if (name == "fpt") return Algo::fpt;
  if (name == "common-dd") return Algo::common_dd;
  if (name == "multi-dd") return Algo::multi_dd;
  if (name == "moore") return Algo::moore;
  throw std::invalid_argument("unknown algorithm \"" + name + "\"");
}

std::string algo_name(Algo algo) {
  switch (algo) {
    case Algo::automatic: return "auto";
    case Algo::oracle: return "oracle";
    case Algo::xp: return "xp";
    case Algo::fpt: return "fpt";
    case Algo::common_dd: return "common-dd";
    case Algo::multi_dd: return "multi-dd";
    case Algo::moore: return "moore";
  }
  return "?";
}

std::string ParameterReport::to_string() const {
  return "n=" + std::to_string(n) + " gamma=" + std::to_string(gamma) +
         " k=" + std::to_string(k) + " v_d=" + std::to_string(v_d) +
         (collapsible ? " (collapsible)" : "");
}

ParameterReport parameter_report(const Instance& inst) {
  ParameterReport rep;
  rep.n = inst.n();
  rep.gamma = inst.effective_gamma();
  rep.k = job_partition(inst).k();
  rep.v_d = due_date_classes(inst).k_d();
  rep.collapsible = rep.gamma >= rep.k || rep.gamma == 0;
  return rep;
}

Algo choose_algorithm(const Instance& inst, const SolveCaps& caps) {
  const ParameterReport rep = parameter_report(inst);
  if (rep.collapsible) return Algo::moore;
  if (rep.v_d == 1) return Algo::common_dd;
  if (rep.k <= caps.k_cap) return Algo::fpt;
  if (rep.gamma <= caps.gamma_cap && xp_within_caps(inst, caps)) return Algo::xp;
  if (rep.v_d <= caps.dd_class_cap && multi_dd_within_caps(inst, caps)) return Algo::multi_dd;
  if (rep.n <= caps.oracle_n_cap) return Algo::oracle;
  throw CapExceeded("no tractable exact algorithm for these parameters: " + rep.to_string());
}

bool algorithm_applicable(Algo algo, const Instance& inst, const SolveCaps& caps) {
  const ParameterReport rep = parameter_report(inst);
  switch (algo) {
    case Algo::automatic: return true;
    case Algo::oracle: return rep.n <= caps.oracle_n_cap;
    case Algo::xp: return xp_within_caps(inst, caps);
    case Algo::fpt: return rep.collapsible || rep.k <= caps.k_cap;
    case Algo::common_dd: return rep.v_d <= 1;
    case Algo::multi_dd: return rep.v_d <= caps.dd_class_cap && multi_dd_within_caps(inst, caps);
    case Algo::moore: return rep.collapsible;
  }
  return false;
}

SolveOutcome solve_instance(const Instance& inst, const SolveConfig& config) {
  Algo algo = config.algo;
  if (algo == Algo::automatic) algo = choose_algorithm(inst, config.caps);

  SolveOutcome out;
  out.algo_used = algo;
  const auto start = std::chrono::steady_clock::now();
  switch (algo) {
    case Algo::oracle:
      out.solution =
          solve_bruteforce(inst, {config.caps.oracle_n_cap, config.caps.max_scenarios}).best;
      break;
    case Algo::xp:
      out.solution = solve_xp(inst, {config.caps.gamma_cap, config.caps.state_cap, false});
      break;
    case Algo::fpt:
      out.solution =
          solve_fpt(inst, {config.caps.k_cap, config.strict_paper_step10, true});
      break;
    case Algo::common_dd: {
      Time mu = 0;
      out.solution = solve_common_due_date(inst, &mu);
      out.mu = std::vector<Time>{mu};
      break;
    }
    case Algo::multi_dd: {
      std::vector<Time> mu;
      out.solution =
          solve_multi_due_date(inst, {config.caps.dd_class_cap, config.caps.state_cap}, &mu);
      out.mu = mu;
      break;
    }
    case Algo::moore: {
      const ParameterReport rep = parameter_report(inst);
      if (!rep.collapsible) {
        throw CapExceeded("moore needs gamma >= k or gamma == 0, got " + rep.to_string());
      }
      Instance collapsed = inst;
      for (Job& j : collapsed.jobs) {
        if (rep.gamma > 0) j.p_bar += j.p_hat;
        j.p_hat = 0;
      }
      out.solution = solution_from_early_set(inst, solve_moore(collapsed).early);
      break;
    }
    case Algo::automatic:
      throw std::logic_error("unresolved automatic algorithm");
  }
  const auto stop = std::chrono::steady_clock::now();
  out.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return out;
}

SolutionRecord make_record(const Instance& inst, const SolveOutcome& outcome, bool timings) {
  SolutionRecord rec;
  rec.instance_digest = instance_digest(inst);
  rec.algorithm = algo_name(outcome.algo_used);
  rec.objective = outcome.solution.objective;
  rec.early = outcome.solution.early;
  rec.sigma = outcome.solution.sigma;
  rec.certificate = outcome.solution.certificate;
  rec.mu = outcome.mu;
  if (timings) rec.wall_time_ms = outcome.wall_time_ms;
  return rec;
}

}  // namespace rsched
