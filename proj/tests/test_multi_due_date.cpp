#include <doctest.h>

#include <bit>

#include "rsched/common_due_date.hpp"
#include "rsched/multi_due_date.hpp"
#include "rsched/oracle.hpp"
#include "testutil.hpp"

using namespace rsched;
using testutil::make_instance;

namespace {

Instance random_class_dd(testutil::Rng& rng, int max_n, int classes, Time max_d, Time max_gamma) {
  const int n = static_cast<int>(rng.range(1, max_n));
  std::vector<Time> dates(static_cast<std::size_t>(classes));
  for (Time& d : dates) d = rng.range(0, max_d);
  Instance inst;
  inst.gamma = rng.range(0, max_gamma);
  for (int id = 1; id <= n; ++id) {
    inst.jobs.push_back(Job{id, rng.range(0, 10), rng.range(0, 10),
                            dates[static_cast<std::size_t>(rng.range(0, classes - 1))]});
  }
  return validate_instance(std::move(inst));
}

// Best early count for one fixed mu vector, by subset brute force over the
// dualized constraints.
int best_count_for_mu(const Instance& inst, const DueDateClassing& classes,
                      const std::vector<Time>& mu) {
  const int n = inst.n();
  const int k = classes.k_d();
  const Time gamma = inst.effective_gamma();
  for (int l = 0; l < k; ++l) {
    if (classes.d_sorted[static_cast<std::size_t>(l)] - gamma * mu[static_cast<std::size_t>(l)] < 0) {
      return 0;
    }
  }
  int best = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    bool ok = true;
    for (int l = 1; l <= k && ok; ++l) {
      Time load = 0;
      for (int id = 1; id <= n; ++id) {
        if (!(mask & (std::uint32_t{1} << (id - 1)))) continue;
        if (classes.class_of[static_cast<std::size_t>(id) - 1] > l) continue;
        const Job& j = inst.job(id);
        load += j.p_bar + std::max<Time>(j.p_hat - mu[static_cast<std::size_t>(l) - 1], 0);
      }
      ok = load + gamma * mu[static_cast<std::size_t>(l) - 1] <=
           classes.d_sorted[static_cast<std::size_t>(l) - 1];
    }
    if (ok) best = std::max(best, static_cast<int>(std::popcount(mask)));
  }
  return best;
}

}  // namespace

TEST_CASE("due_date_classes basics") {
  const Instance common = make_instance({{{1, 0, 7}}, {{2, 0, 7}}}, 0);
  CHECK(due_date_classes(common).k_d() == 1);

  const DueDateClassing classes = due_date_classes(testutil::instance_i1());
  CHECK(classes.k_d() == 2);
  CHECK(classes.d_sorted == std::vector<Time>{5, 6});
  CHECK(classes.class_of == std::vector<int>{1, 2, 2});

  const Instance distinct = make_instance({{{1, 0, 3}}, {{1, 0, 9}}, {{1, 0, 5}}}, 0);
  CHECK(due_date_classes(distinct).k_d() == 3);
}

TEST_CASE("mu_grid shapes") {
  const Instance certain = make_instance({{{1, 0, 5}}, {{2, 0, 5}}}, 1);
  CHECK(mu_grid(certain, 1).size() == 1);  // only mu = 0 after dedup

  const Instance two = make_instance({{{1, 2, 5}}, {{1, 3, 9}}}, 1);
  const auto grid = mu_grid(two, 2);
  CHECK(grid.size() == 9);  // {0, 2, 3}^2
  CHECK(grid.front().mu == std::vector<Time>{0, 0});
  CHECK(grid.back().mu == std::vector<Time>{3, 3});

  // k_d = 1 grid has the same candidates as the common-due-date search.
  CHECK(mu_grid(two, 1).size() == 3);
}

TEST_CASE("multi due date solves I1") {
  std::vector<Time> mu;
  const EarlySetSolution sol = solve_multi_due_date(testutil::instance_i1(), {}, &mu);
  CHECK(sol.objective == 1);
  CHECK(mu.size() == 2);
}

TEST_CASE("single-class collapse equals the common due date solver") {
  testutil::Rng rng(0xC0DE0040);
  for (int round = 0; round < 40; ++round) {
    const Instance inst = random_class_dd(rng, 10, 1, 35, 3);
    CHECK(solve_multi_due_date(inst).objective == solve_common_due_date(inst).objective);
  }
}

TEST_CASE("multi due date equals the oracle on two-class instances") {
  testutil::Rng rng(0xC0DE0041);
  for (int round = 0; round < 100; ++round) {
    const Instance inst = random_class_dd(rng, 10, 2, 30, 2);
    const EarlySetSolution sol = solve_multi_due_date(inst);
    CHECK(sol.objective == solve_bruteforce(inst).best.objective);
    CHECK(is_feasible_early_set(inst, sol.early).feasible);
  }
}

TEST_CASE("multi due date handles three classes") {
  testutil::Rng rng(0xC0DE0042);
  for (int round = 0; round < 25; ++round) {
    const Instance inst = random_class_dd(rng, 8, 3, 20, 2);
    CHECK(solve_multi_due_date(inst).objective == solve_bruteforce(inst).best.objective);
  }
}

TEST_CASE("dense integer grids cannot beat the candidate grid") {
  testutil::Rng rng(0xC0DE0043);
  for (int round = 0; round < 12; ++round) {
    const Instance inst = random_class_dd(rng, 7, 2, 15, 2);
    const DueDateClassing classes = due_date_classes(inst);
    if (classes.k_d() != 2) continue;
    Time max_dev = 0;
    for (const Job& j : inst.jobs) max_dev = std::max(max_dev, j.p_hat);

    const int solver = inst.n() - solve_multi_due_date(inst).objective;
    int dense = 0;
    for (Time m1 = 0; m1 <= max_dev; ++m1) {
      for (Time m2 = 0; m2 <= max_dev; ++m2) {
        dense = std::max(dense, best_count_for_mu(inst, classes, {m1, m2}));
      }
    }
    CHECK(dense == solver);
  }
}

TEST_CASE("multi due date enforces its caps with named diagnostics") {
  const Instance distinct = make_instance(
      {{{1, 0, 1}}, {{1, 0, 2}}, {{1, 0, 3}}, {{1, 0, 4}}}, 0);
  CHECK_THROWS_WITH_AS(solve_multi_due_date(distinct, {3, 1'000'000}, nullptr),
                       doctest::Contains("class cap"), CapExceeded);

  const Instance wide = make_instance({{{1, 2, 1'000'000}}, {{1, 3, 2'000'000}}}, 1);
  CHECK_THROWS_WITH_AS(solve_multi_due_date(wide, {3, 100}, nullptr),
                       doctest::Contains("state cap"), CapExceeded);
}
