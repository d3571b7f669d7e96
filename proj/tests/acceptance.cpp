// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] must point at the CLI binary (the determinism criterion
// launches it); ctest wires that up.

#include <sys/wait.h>
#include <unistd.h>

#include <bit>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "rsched/common_due_date.hpp"
#include "rsched/fpt.hpp"
#include "rsched/generators.hpp"
#include "rsched/io.hpp"
#include "rsched/multi_due_date.hpp"
#include "rsched/oracle.hpp"
#include "rsched/solve.hpp"
#include "rsched/xp.hpp"

namespace fs = std::filesystem;
using namespace rsched;

namespace {

int g_failures = 0;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << " (" << name
            << "): " << detail << "\n";
  std::cout.flush();
  if (!pass) ++g_failures;
}

struct Mix {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

int g_common_dd_checked = 0;
int g_common_dd_mismatches = 0;

// Criterion 1: every applicable algorithm reproduces the oracle objective on
// 500 seeded random instances (n <= 12, times in [0,10], d in [0,40],
// gamma in [0,4], mixed deviation counts and due-date profiles).
void criterion1() {
  Stopwatch watch;
  Mix mix{20250810};
  int mismatches = 0;
  int runs = 0;
  for (int i = 0; i < 500; ++i) {
    RandomSpec spec;
    spec.n = 1 + static_cast<int>(mix.next() % 12);
    spec.gamma = static_cast<Time>(mix.next() % 5);
    spec.max_p = 10;
    spec.max_dev = 10;
    spec.max_d = 40;
    spec.k_uncertain = static_cast<int>(mix.next() % (static_cast<std::uint64_t>(spec.n) + 1));
    switch (i % 4) {
      case 0: spec.style = DueDateStyle::uniform; break;
      case 1: spec.style = DueDateStyle::common; break;
      case 2: spec.style = DueDateStyle::two_point; break;
      default:
        spec.style = DueDateStyle::clustered;
        spec.num_classes = 2 + static_cast<int>(mix.next() % 2);
        break;
    }
    spec.seed = mix.next();
    const Instance inst = gen_random(spec).instance;

    const int expected = solve_bruteforce(inst).best.objective;
    const ParameterReport rep = parameter_report(inst);

    auto check = [&](int objective) {
      ++runs;
      if (objective != expected) ++mismatches;
    };
    check(solve_xp(inst).objective);
    check(solve_fpt(inst).objective);
    if (rep.v_d <= 1) {
      const int objective = solve_common_due_date(inst).objective;
      ++g_common_dd_checked;
      if (objective != expected) ++g_common_dd_mismatches;
      check(objective);
    }
    if (rep.v_d >= 1 && rep.v_d <= 2) check(solve_multi_due_date(inst).objective);
    if (rep.collapsible) {
      Instance collapsed = inst;
      for (Job& j : collapsed.jobs) {
        if (rep.gamma > 0) j.p_bar += j.p_hat;
        j.p_hat = 0;
      }
      const EarlySetSolution moore = solve_moore(collapsed);
      check(solution_from_early_set(inst, moore.early).objective);
    }
  }
  const double secs = watch.seconds();
  std::ostringstream detail;
  detail << "500 instances, " << runs << " solver runs, " << mismatches << " mismatches, " << secs
         << " s (limit 120)";
  report(1, "oracle equivalence", mismatches == 0 && secs < 120.0, detail.str());
}

// Criterion 2: worst-case evaluation equals explicit scenario maximization on
// 200 random (instance, permutation) pairs.
void criterion2() {
  Stopwatch watch;
  Mix mix{777002};
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    RandomSpec spec;
    spec.n = 1 + static_cast<int>(mix.next() % 10);
    spec.gamma = static_cast<Time>(mix.next() % 4);
    spec.max_p = 10;
    spec.max_dev = 10;
    spec.max_d = 40;
    spec.k_uncertain = static_cast<int>(mix.next() % (static_cast<std::uint64_t>(spec.n) + 1));
    spec.style = DueDateStyle::uniform;
    spec.seed = mix.next();
    const Instance inst = gen_random(spec).instance;

    std::vector<int> sigma(static_cast<std::size_t>(inst.n()));
    for (int j = 0; j < inst.n(); ++j) sigma[static_cast<std::size_t>(j)] = j + 1;
    for (int j = inst.n() - 1; j > 0; --j) {
      std::swap(sigma[static_cast<std::size_t>(j)],
                sigma[static_cast<std::size_t>(mix.next() % (static_cast<std::uint64_t>(j) + 1))]);
    }

    const EvaluatedSchedule fast = evaluate_schedule(inst, sigma);
    const EvaluatedSchedule slow = check_by_scenario_enumeration(inst, sigma);
    if (fast.worst_completion != slow.worst_completion || fast.tardy_flag != slow.tardy_flag ||
        fast.objective != slow.objective) {
      ++mismatches;
    }
  }
  std::ostringstream detail;
  detail << "200 pairs, " << mismatches << " mismatches, " << watch.seconds() << " s";
  report(2, "scenario semantics", mismatches == 0, detail.str());
}

// Criterion 3: the k-sum round trip, exhaustive over strictly increasing
// tuples from [1..8] with h <= 6 and k in {2,3}.
void criterion3() {
  Stopwatch watch;
  int instances = 0;
  int violations = 0;
  std::vector<std::int64_t> set;
  auto enumerate = [&](auto&& self, int h, int next) -> void {
    if (static_cast<int>(set.size()) == h) {
      std::int64_t total = 0;
      for (std::int64_t v : set) total += v;
      for (int k = 2; k <= 3 && k < h; ++k) {
        for (std::int64_t b = 1; b < total; ++b) {
          const KSumInstance src{set, k, b};
          const bool yes = ksum_bruteforce(src);
          const GeneratedInstance gen = gen_ksum_reduction(src);
          const bool mapped =
              solve_bruteforce(gen.instance).best.objective <= *gen.meta.threshold;
          ++instances;
          if (yes != mapped) ++violations;
        }
      }
      return;
    }
    for (int v = next; v <= 8; ++v) {
      set.push_back(v);
      self(self, h, v + 1);
      set.pop_back();
    }
  };
  for (int h = 3; h <= 6; ++h) enumerate(enumerate, h, 1);
  const double secs = watch.seconds();
  std::ostringstream detail;
  detail << instances << " k-sum instances, " << violations << " round-trip violations, " << secs
         << " s (limit 600)";
  report(3, "k-sum hardness round trip", violations == 0 && secs < 600.0, detail.str());
}

// Criterion 4: the equal-cardinality-partition round trip, exhaustive over
// multisets from [1..8] with h <= 4.
void criterion4() {
  Stopwatch watch;
  int instances = 0;
  int violations = 0;
  std::vector<std::int64_t> multiset;
  auto enumerate = [&](auto&& self, int len, int next) -> void {
    if (static_cast<int>(multiset.size()) == len) {
      std::int64_t total = 0;
      for (std::int64_t v : multiset) total += v;
      if (total % 2 != 0) return;  // outside the reduction's domain, trivially "no"
      const PartitionInstance src{multiset};
      const bool yes = partition_bruteforce(src);
      const GeneratedInstance gen = gen_partition_reduction(src);
      const bool mapped = solve_bruteforce(gen.instance).best.objective <= *gen.meta.threshold;
      ++instances;
      if (yes != mapped) ++violations;
      return;
    }
    for (int v = next; v <= 8; ++v) {
      multiset.push_back(v);
      self(self, len, v);
      multiset.pop_back();
    }
  };
  for (int h = 1; h <= 4; ++h) enumerate(enumerate, 2 * h, 1);
  const double secs = watch.seconds();
  std::ostringstream detail;
  detail << instances << " partition instances, " << violations << " round-trip violations, "
         << secs << " s (limit 300)";
  report(4, "partition hardness round trip", violations == 0 && secs < 300.0, detail.str());
}

// Criterion 5: the dual search handles n = 10,000 within 5 s, and matched the
// oracle on every single-due-date instance of criterion 1.
void criterion5() {
  RandomSpec spec;
  spec.n = 10'000;
  spec.gamma = 50;
  spec.max_p = 1000;
  spec.max_dev = 500;
  spec.max_d = 3'000'000;
  spec.style = DueDateStyle::common;
  spec.k_uncertain = 5000;
  spec.seed = 4242;
  const Instance inst = gen_random(spec).instance;

  Stopwatch watch;
  const EarlySetSolution sol = solve_common_due_date(inst);
  const double secs = watch.seconds();

  const bool sane = sol.objective >= 0 && sol.objective <= inst.n() &&
                    is_feasible_early_set(inst, sol.early).feasible;
  std::ostringstream detail;
  detail << "n=10000 solved in " << secs << " s (limit 5); criterion-1 single-due-date checks: "
         << g_common_dd_checked << " instances, " << g_common_dd_mismatches << " mismatches";
  report(5, "common due date scale",
         secs < 5.0 && sane && g_common_dd_checked > 0 && g_common_dd_mismatches == 0,
         detail.str());
}

// Criterion 6: xp finishes n=30 gamma=2 within 10 s and n=20 gamma=3 within
// 30 s, agreeing with the fpt solver on both.
void criterion6() {
  RandomSpec spec30;
  spec30.n = 30;
  spec30.gamma = 2;
  spec30.max_p = 10;
  spec30.max_dev = 10;
  spec30.max_d = 200;
  spec30.style = DueDateStyle::uniform;
  spec30.k_uncertain = 12;
  spec30.seed = 3030;
  const Instance inst30 = gen_random(spec30).instance;

  Stopwatch watch30;
  const EarlySetSolution sol30 = solve_xp(inst30);
  const double secs30 = watch30.seconds();
  const int fpt30 = solve_fpt(inst30).objective;

  RandomSpec spec20 = spec30;
  spec20.n = 20;
  spec20.gamma = 3;
  spec20.max_d = 140;
  spec20.k_uncertain = 10;
  spec20.seed = 2020;
  const Instance inst20 = gen_random(spec20).instance;

  Stopwatch watch20;
  const EarlySetSolution sol20 = solve_xp(inst20);
  const double secs20 = watch20.seconds();
  const int fpt20 = solve_fpt(inst20).objective;

  std::ostringstream detail;
  detail << "n=30 gamma=2: " << secs30 << " s (limit 10), n=20 gamma=3: " << secs20
         << " s (limit 30), objectives " << sol30.objective << "/" << sol20.objective
         << " match fpt";
  report(6, "xp envelope",
         secs30 < 10.0 && secs20 < 30.0 && sol30.objective == fpt30 && sol20.objective == fpt20,
         detail.str());
}

// Criterion 7: fpt finishes n=5000 with k=12 uncertain jobs within 10 s.
void criterion7() {
  RandomSpec spec;
  spec.n = 5000;
  spec.gamma = 4;
  spec.max_p = 100;
  spec.max_dev = 80;
  spec.max_d = 300'000;
  spec.style = DueDateStyle::uniform;
  spec.k_uncertain = 12;
  spec.seed = 5050;
  const Instance inst = gen_random(spec).instance;

  Stopwatch watch;
  const EarlySetSolution sol = solve_fpt(inst);
  const double secs = watch.seconds();
  const bool sane = is_feasible_early_set(inst, sol.early).feasible;

  std::ostringstream detail;
  detail << "n=5000 k=12 solved in " << secs << " s (limit 10), objective " << sol.objective;
  report(7, "fpt envelope", secs < 10.0 && sane, detail.str());
}

// Criterion 8: extended Moore output is compact (max |E2|, then min total
// nominal time) against brute force on 200 random feasible subproblems.
void criterion8() {
  Stopwatch watch;
  Mix mix{888008};
  int checked = 0;
  int violations = 0;
  while (checked < 200) {
    RandomSpec spec;
    spec.n = 1 + static_cast<int>(mix.next() % 10);
    spec.gamma = static_cast<Time>(mix.next() % 4);
    spec.max_p = 8;
    spec.max_dev = 8;
    spec.max_d = 35;
    spec.k_uncertain = static_cast<int>(mix.next() % (static_cast<std::uint64_t>(spec.n) + 1));
    spec.style = DueDateStyle::uniform;
    spec.seed = mix.next();
    const Instance inst = gen_random(spec).instance;

    std::vector<int> j1, j2;
    for (const Job& j : inst.jobs) (j.p_hat > 0 ? j1 : j2).push_back(j.id);
    std::vector<int> e1;
    for (int id : j1) {
      if (mix.next() % 2 == 1) e1.push_back(id);
    }
    const SubproblemSlacks slacks = feasibility_and_slacks(inst, e1);
    if (!slacks.feasible) continue;
    ++checked;

    const auto e2 = extended_moore(inst, slacks);
    if (!e2.has_value()) {
      ++violations;
      continue;
    }
    int best_card = 0;
    Time best_nominal = 0;
    const int m = static_cast<int>(j2.size());
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
      std::vector<int> candidate = e1;
      Time nominal = 0;
      for (std::uint32_t mb = mask; mb != 0; mb &= mb - 1) {
        const int id = j2[static_cast<std::size_t>(std::countr_zero(mb))];
        candidate.push_back(id);
        nominal += inst.job(id).p_bar;
      }
      if (!is_feasible_early_set(inst, candidate).feasible) continue;
      const int card = static_cast<int>(std::popcount(mask));
      if (card > best_card || (card == best_card && nominal < best_nominal)) {
        best_card = card;
        best_nominal = nominal;
      }
    }
    Time got_nominal = 0;
    for (int id : *e2) got_nominal += inst.job(id).p_bar;
    if (static_cast<int>(e2->size()) != best_card || got_nominal != best_nominal) ++violations;
  }
  std::ostringstream detail;
  detail << "200 feasible subproblems, " << violations << " compactness violations, "
         << watch.seconds() << " s";
  report(8, "extended Moore compactness", violations == 0, detail.str());
}

int run_command(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Criterion 9: repeated cmd_solve and cmd_bench runs, single- and
// multi-threaded, produce byte-identical outputs.
void criterion9(const std::string& cli) {
  if (cli.empty()) {
    report(9, "determinism", false, "CLI binary path not provided (run via ctest)");
    return;
  }
  const fs::path dir =
      fs::temp_directory_path() / ("rsched_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir / "corpus");

  // Small mixed corpus, including a gamma = 0 instance.
  Mix mix{909009};
  for (int i = 0; i < 6; ++i) {
    RandomSpec spec;
    spec.n = 4 + static_cast<int>(mix.next() % 7);
    spec.gamma = i == 0 ? 0 : static_cast<Time>(mix.next() % 4);
    spec.max_p = 10;
    spec.max_dev = 10;
    spec.max_d = 40;
    spec.k_uncertain = static_cast<int>(mix.next() % (static_cast<std::uint64_t>(spec.n) + 1));
    spec.style = i % 2 == 0 ? DueDateStyle::uniform : DueDateStyle::clustered;
    spec.num_classes = 2;
    spec.seed = mix.next();
    const GeneratedInstance gen = gen_random(spec);
    char name[32];
    std::snprintf(name, sizeof(name), "inst_%02d.json", i);
    save_instance((dir / "corpus" / name).string(), gen.instance, &gen.meta);
  }

  const std::string inst_path = (dir / "corpus" / "inst_01.json").string();
  bool ok = true;
  std::ostringstream detail;

  auto solve_to = [&](const std::string& out, int threads) {
    return run_command("\"" + cli + "\" solve --input \"" + inst_path + "\" --output \"" + out +
                       "\" --threads " + std::to_string(threads) + " >/dev/null 2>&1");
  };
  const std::string s1a = (dir / "solve_t1_a.json").string();
  const std::string s1b = (dir / "solve_t1_b.json").string();
  const std::string s8 = (dir / "solve_t8.json").string();
  ok = solve_to(s1a, 1) == 0 && solve_to(s1b, 1) == 0 && solve_to(s8, 8) == 0;
  const bool solve_identical = ok && slurp(s1a) == slurp(s1b) && slurp(s1a) == slurp(s8);
  ok = ok && solve_identical && !slurp(s1a).empty();
  detail << "solve outputs identical: " << solve_identical;

  auto bench_to = [&](const std::string& out, int threads) {
    return run_command("\"" + cli + "\" bench --dir \"" + (dir / "corpus").string() +
                       "\" --output \"" + out + "\" --threads " + std::to_string(threads) +
                       " >/dev/null 2>&1");
  };
  const std::string b1a = (dir / "bench_t1_a.csv").string();
  const std::string b1b = (dir / "bench_t1_b.csv").string();
  const std::string b8 = (dir / "bench_t8.csv").string();
  const bool bench_ran = bench_to(b1a, 1) == 0 && bench_to(b1b, 1) == 0 && bench_to(b8, 8) == 0;
  const bool bench_identical =
      bench_ran && slurp(b1a) == slurp(b1b) && slurp(b1a) == slurp(b8);
  ok = ok && bench_ran && bench_identical && !slurp(b1a).empty();
  detail << ", bench outputs identical: " << bench_identical;

  fs::remove_all(dir);
  report(9, "determinism", ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  std::cout << "acceptance suite\n";

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9(cli);

  if (g_failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << g_failures << " criteria failed\n";
  return 1;
}
