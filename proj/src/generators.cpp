#include "rsched/generators.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace rsched {

namespace {

// splitmix64: small, stable across platforms, good enough for instance
// corpora. std::uniform_int_distribution is implementation-defined, so the
// bounded draw is hand-rolled too.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound] by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == std::numeric_limits<std::uint64_t>::max()) return next();
    const std::uint64_t range = bound + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % range;
  }

  Time uniform_time(Time lo, Time hi) {
    return lo + static_cast<Time>(next_below(static_cast<std::uint64_t>(hi - lo)));
  }
};

void check_63bit_sum(std::initializer_list<unsigned __int128> terms, const std::string& what) {
  unsigned __int128 sum = 0;
  for (auto t : terms) sum += t;
  if (sum > static_cast<unsigned __int128>(std::numeric_limits<Time>::max())) {
    throw std::invalid_argument("overflow risk: " + what + " exceeds 63 bits");
  }
}

std::int64_t positive_sum(const std::vector<std::int64_t>& a, const std::string& what) {
  std::int64_t sum = 0;
  for (std::int64_t v : a) {
    if (v < 1) throw std::invalid_argument(what + " entries must be positive");
    check_63bit_sum({static_cast<unsigned __int128>(sum), static_cast<unsigned __int128>(v)},
                    what + " total");
    sum += v;
  }
  return sum;
}

}  // namespace

GeneratedInstance gen_ksum_reduction(const KSumInstance& src, std::optional<std::int64_t> m_opt) {
  const int h = static_cast<int>(src.a.size());
  if (h < 2) throw std::invalid_argument("ksum requires h >= 2 (no valid k exists for h = 1)");
  const std::int64_t total = positive_sum(src.a, "ksum");
  if (src.k < 1 || src.k >= h) throw std::invalid_argument("ksum requires 1 <= k < h");
  if (src.b < 1 || src.b >= total) throw std::invalid_argument("ksum requires 0 < B < A");

  check_63bit_sum({static_cast<unsigned __int128>(total), static_cast<unsigned __int128>(total)},
                  "ksum 2A");
  const std::int64_t m_min = std::max<std::int64_t>(2 * total, std::int64_t{h} * h);
  const std::int64_t m = m_opt.value_or(m_min);
  if (m < m_min) {
    throw std::invalid_argument("M too small: need M >= max(2A, h^2) = " + std::to_string(m_min));
  }

  const auto mm = static_cast<unsigned __int128>(m);
  const auto a_total = static_cast<unsigned __int128>(total);
  const unsigned __int128 m2 = mm * mm;
  const unsigned __int128 m3 = m2 * mm;
  const int k = src.k;
  const int n = 2 * h + k + 1;

  // sum_{j'=1..h} j' M^2, the largest nominal block in any due date.
  const unsigned __int128 m2_full =
      m2 * (static_cast<unsigned __int128>(h) * static_cast<unsigned __int128>(h + 1) / 2);
  check_63bit_sum({m2_full, static_cast<unsigned __int128>(k) * static_cast<unsigned __int128>(h) * mm,
                   static_cast<unsigned __int128>(h - k) * mm, a_total, a_total,
                   static_cast<unsigned __int128>(k + 1) * m3},
                  "ksum reduction due dates");
  check_63bit_sum({static_cast<unsigned __int128>(n) *
                   (m2 * static_cast<unsigned __int128>(h) + mm + a_total + m3)},
                  "ksum reduction makespan bound");

  Instance inst;
  inst.gamma = k + 1;
  inst.jobs.reserve(static_cast<std::size_t>(n));

  unsigned __int128 m2_prefix = 0;
  for (int j = 1; j <= h; ++j) {
    const std::int64_t a_j = src.a[static_cast<std::size_t>(j) - 1];
    m2_prefix += m2 * static_cast<unsigned __int128>(j);
    Time d;
    if (j < h) {
      d = static_cast<Time>(m2_prefix + static_cast<unsigned __int128>(j) *
                                            static_cast<unsigned __int128>(h) * mm +
                            2 * a_total);
    } else {
      d = static_cast<Time>(m2_prefix +
                            static_cast<unsigned __int128>(k) * static_cast<unsigned __int128>(h) * mm +
                            static_cast<unsigned __int128>(h - k) * mm + a_total +
                            static_cast<unsigned __int128>(src.b));
    }
    inst.jobs.push_back(Job{2 * j - 1, static_cast<Time>(m2 * static_cast<unsigned __int128>(j)),
                            static_cast<Time>(h) * m + 2 * a_j, d});
    inst.jobs.push_back(Job{2 * j,
                            static_cast<Time>(m2 * static_cast<unsigned __int128>(j)) + m + a_j,
                            0, d});
  }
  const Time d_tail = static_cast<Time>(
      m2_full + static_cast<unsigned __int128>(h - k) * mm + a_total -
      static_cast<unsigned __int128>(src.b) + static_cast<unsigned __int128>(k + 1) * m3);
  for (int j = 2 * h + 1; j <= n; ++j) {
    inst.jobs.push_back(Job{j, 0, static_cast<Time>(m3), d_tail});
  }

  GeneratedInstance out;
  out.instance = validate_instance(std::move(inst));
  out.meta.source = "ksum";
  out.meta.threshold = h;
  out.meta.m = m;
  return out;
}

GeneratedInstance gen_partition_reduction(const PartitionInstance& src,
                                          std::optional<std::int64_t> m_opt) {
  if (src.a.empty() || src.a.size() % 2 != 0) {
    throw std::invalid_argument("partition requires a nonempty list of even length");
  }
  const int h = static_cast<int>(src.a.size()) / 2;
  const std::int64_t total = positive_sum(src.a, "partition");  // = 2A
  if (total % 2 != 0) {
    throw std::invalid_argument("partition reduction requires an even total (A must be integer)");
  }
  check_63bit_sum({static_cast<unsigned __int128>(total), 1}, "partition 2A + 1");
  const std::int64_t m = m_opt.value_or(total + 1);
  if (m <= total) {
    throw std::invalid_argument("M too small: need M > 2A = " + std::to_string(total));
  }

  const auto mm = static_cast<unsigned __int128>(m);
  check_63bit_sum({static_cast<unsigned __int128>(h) * (mm + mm * mm)},
                  "partition reduction due dates");
  check_63bit_sum({static_cast<unsigned __int128>(3 * h) * (mm * mm + mm +
                   static_cast<unsigned __int128>(total))},
                  "partition reduction makespan bound");

  const std::int64_t half = total / 2;  // A
  Instance inst;
  inst.gamma = h;
  inst.jobs.reserve(static_cast<std::size_t>(3 * h));
  const Time d1 = static_cast<Time>(h) * m + half;
  const Time d2 = static_cast<Time>(static_cast<unsigned __int128>(h) * (mm + mm * mm) -
                                    static_cast<unsigned __int128>(half));
  for (int j = 1; j <= 2 * h; ++j) {
    const std::int64_t a_j = src.a[static_cast<std::size_t>(j) - 1];
    inst.jobs.push_back(Job{j, m - a_j, 2 * a_j, d1});
  }
  for (int j = 2 * h + 1; j <= 3 * h; ++j) {
    inst.jobs.push_back(Job{j, 0, static_cast<Time>(mm * mm), d2});
  }

  GeneratedInstance out;
  out.instance = validate_instance(std::move(inst));
  out.meta.source = "partition";
  out.meta.threshold = h;
  out.meta.m = m;
  return out;
}

bool ksum_bruteforce(const KSumInstance& src, int h_cap) {
  const int h = static_cast<int>(src.a.size());
  if (h > h_cap) throw CapExceeded("ksum bruteforce limited to h <= " + std::to_string(h_cap));
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << h); ++mask) {
    if (std::popcount(mask) != src.k) continue;
    std::int64_t sum = 0;
    for (std::uint32_t mbit = mask; mbit != 0; mbit &= mbit - 1) {
      sum += src.a[static_cast<std::size_t>(std::countr_zero(mbit))];
    }
    if (sum == src.b) return true;
  }
  return false;
}

bool partition_bruteforce(const PartitionInstance& src, int h_cap) {
  if (src.a.empty() || src.a.size() % 2 != 0) return false;
  const int h = static_cast<int>(src.a.size()) / 2;
  if (h > h_cap) {
    throw CapExceeded("partition bruteforce limited to h <= " + std::to_string(h_cap));
  }
  const std::int64_t total = std::accumulate(src.a.begin(), src.a.end(), std::int64_t{0});
  if (total % 2 != 0) return false;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << (2 * h)); ++mask) {
    if (std::popcount(mask) != h) continue;
    std::int64_t sum = 0;
    for (std::uint32_t mbit = mask; mbit != 0; mbit &= mbit - 1) {
      sum += src.a[static_cast<std::size_t>(std::countr_zero(mbit))];
    }
    if (sum == total / 2) return true;
  }
  return false;
}

GeneratedInstance gen_random(const RandomSpec& spec) {
  if (spec.n < 0) throw std::invalid_argument("n must be nonnegative");
  if (spec.gamma < 0) throw std::invalid_argument("gamma must be nonnegative");
  if (spec.max_p < 0 || spec.max_dev < 0 || spec.max_d < 0) {
    throw std::invalid_argument("ranges must be nonnegative");
  }
  if (spec.k_uncertain < 0 || spec.k_uncertain > spec.n) {
    throw std::invalid_argument("k_uncertain must lie in [0, n]");
  }
  if (spec.k_uncertain > 0 && spec.max_dev < 1) {
    throw std::invalid_argument("k_uncertain > 0 requires max_dev >= 1");
  }
  if (spec.style == DueDateStyle::clustered && spec.num_classes < 1) {
    throw std::invalid_argument("clustered style requires num_classes >= 1");
  }

  SplitMix64 rng(spec.seed);
  const int n = spec.n;

  Instance inst;
  inst.gamma = spec.gamma;
  inst.jobs.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    inst.jobs[static_cast<std::size_t>(i)].id = i + 1;
    inst.jobs[static_cast<std::size_t>(i)].p_bar = rng.uniform_time(0, spec.max_p);
  }

  // Exactly k_uncertain jobs deviate: partial Fisher-Yates over the ids.
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < spec.k_uncertain; ++i) {
    const auto pick =
        i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1 - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick)]);
    inst.jobs[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])].p_hat =
        rng.uniform_time(1, spec.max_dev);
  }

  switch (spec.style) {
    case DueDateStyle::uniform:
      for (Job& j : inst.jobs) j.d = rng.uniform_time(0, spec.max_d);
      break;
    case DueDateStyle::common: {
      const Time d = rng.uniform_time(0, spec.max_d);
      for (Job& j : inst.jobs) j.d = d;
      break;
    }
    case DueDateStyle::two_point: {
      Time lo = rng.uniform_time(0, spec.max_d);
      Time hi = rng.uniform_time(0, spec.max_d);
      if (lo > hi) std::swap(lo, hi);
      for (Job& j : inst.jobs) j.d = rng.next_below(1) != 0 ? hi : lo;
      break;
    }
    case DueDateStyle::clustered: {
      std::vector<Time> values(static_cast<std::size_t>(spec.num_classes));
      for (Time& v : values) v = rng.uniform_time(0, spec.max_d);
      for (Job& j : inst.jobs) {
        j.d = values[static_cast<std::size_t>(
            rng.next_below(static_cast<std::uint64_t>(spec.num_classes - 1)))];
      }
      break;
    }
  }

  GeneratedInstance out;
  out.instance = validate_instance(std::move(inst));
  out.meta.source = "random";
  out.meta.seed = spec.seed;
  return out;
}

}  // namespace rsched
