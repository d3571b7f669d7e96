#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsched/core.hpp"

namespace rsched {

// Source problem: does some k-element subset of `a` sum to exactly `b`?
struct KSumInstance {
  std::vector<std::int64_t> a;  // h positive integers
  int k = 0;                    // 1 <= k < h
  std::int64_t b = 0;           // 0 < b < sum(a)
};

// Source problem: can `a` (2h positive integers) be split into two halves of
// equal cardinality and equal sum?
struct PartitionInstance {
  std::vector<std::int64_t> a;
};

struct GeneratorMeta {
  std::string source;                      // "ksum" | "partition" | "random"
  std::optional<std::int64_t> threshold;   // tardy count deciding the source answer
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> m;
};

struct GeneratedInstance {
  Instance instance;
  GeneratorMeta meta;
};

// Scheduling instance with n = 2h + k + 1 jobs and gamma = k + 1 whose
// optimum has at most h tardy jobs iff the source is a yes-instance.
// m defaults to max(2A, h^2) and must not be below it.
GeneratedInstance gen_ksum_reduction(const KSumInstance& src,
                                     std::optional<std::int64_t> m = std::nullopt);

// Two-due-date scheduling instance with 3h jobs and gamma = h whose optimum
// has at most h tardy jobs iff the source splits evenly. m defaults to
// 2A + 1 and must exceed 2A.
GeneratedInstance gen_partition_reduction(const PartitionInstance& src,
                                          std::optional<std::int64_t> m = std::nullopt);

// Exhaustive micro-solvers for the source problems (h up to h_cap).
bool ksum_bruteforce(const KSumInstance& src, int h_cap = 12);
bool partition_bruteforce(const PartitionInstance& src, int h_cap = 12);

enum class DueDateStyle { uniform, two_point, common, clustered };

struct RandomSpec {
  int n = 0;
  Time gamma = 0;
  Time max_p = 0;    // p_bar drawn from [0, max_p]
  Time max_dev = 0;  // nonzero deviations drawn from [1, max_dev]
  Time max_d = 0;    // due dates drawn from [0, max_d]
  DueDateStyle style = DueDateStyle::uniform;
  int num_classes = 3;  // clustered style only
  int k_uncertain = 0;  // exactly this many jobs get p_hat > 0
  std::uint64_t seed = 0;
};

// Seeded pseudo-random instance; identical spec yields a bit-identical
// instance on every platform.
GeneratedInstance gen_random(const RandomSpec& spec);

}  // namespace rsched
