#include "rsched/xp.hpp"

#include <algorithm>
#include <cassert>

namespace rsched {

namespace {

// Parent codes, one per finite state per stage.
constexpr std::int32_t kInherit = -1;     // job tardy, state copied from stage j-1
constexpr std::int32_t kAddKeepPi = -2;   // job early, pi unchanged (Case 2)
constexpr std::int32_t kTakeNoSwap = -3;  // job early, predecessor pi \ {j} (Case 1, ell <= gamma)
// codes >= 1 mean: job early, predecessor pi \ {j} + {code} (Case 1, ell > gamma)

}  // namespace

struct XpBuilder {
  const Instance& inst;
  const XpOptions& opts;
  XpTable t;

  int n = 0;
  int gamma = 0;
  std::vector<Time> p_bar, p_hat, due;  // by stage, [0] unused
  std::vector<int> stages_by_id;        // candidate scan order for Case 1 swaps

  std::vector<std::vector<std::uint64_t>> binom;
  std::vector<std::int32_t> members;     // flattened, stride = max(gamma, 1)
  std::vector<std::uint8_t> size_of;
  std::vector<std::int32_t> bottom_of;   // precedes-maximum member; 0 for empty set
  std::vector<std::int32_t> max_member;  // 0 for empty set
  std::vector<Time> devsum_of;
  int stride = 1;

  XpBuilder(const Instance& i, const XpOptions& o) : inst(i), opts(o) {}

  bool precedes(int stage_a, int stage_b) const {
    return deviation_precedes(inst.job(t.edd_[static_cast<std::size_t>(stage_a) - 1]),
                              inst.job(t.edd_[static_cast<std::size_t>(stage_b) - 1]));
  }

  std::uint64_t index_of(const std::vector<int>& asc) const {
    std::uint64_t idx = t.offsets_[asc.size()];
    for (std::size_t i = 0; i < asc.size(); ++i) {
      idx += binom[static_cast<std::size_t>(asc[i] - 1)][i + 1];
    }
    return idx;
  }

  void prepare() {
    n = inst.n();
    gamma = static_cast<int>(inst.effective_gamma());
    if (gamma > opts.gamma_cap) {
      throw CapExceeded("gamma = " + std::to_string(gamma) + " exceeds cap " +
                        std::to_string(opts.gamma_cap));
    }
    t.n_ = n;
    t.gamma_ = gamma;
    t.edd_ = edd_permutation(inst);
    t.all_stages_ = opts.keep_stage_values;

    p_bar.resize(static_cast<std::size_t>(n) + 1);
    p_hat.resize(static_cast<std::size_t>(n) + 1);
    due.resize(static_cast<std::size_t>(n) + 1);
    for (int s = 1; s <= n; ++s) {
      const Job& j = inst.job(t.edd_[static_cast<std::size_t>(s) - 1]);
      p_bar[static_cast<std::size_t>(s)] = j.p_bar;
      p_hat[static_cast<std::size_t>(s)] = j.p_hat;
      due[static_cast<std::size_t>(s)] = j.d;
    }
    stages_by_id.resize(static_cast<std::size_t>(n));
    for (int s = 1; s <= n; ++s) stages_by_id[static_cast<std::size_t>(s) - 1] = s;
    std::sort(stages_by_id.begin(), stages_by_id.end(), [&](int a, int b) {
      return t.edd_[static_cast<std::size_t>(a) - 1] < t.edd_[static_cast<std::size_t>(b) - 1];
    });

    binom.assign(static_cast<std::size_t>(n) + 1,
                 std::vector<std::uint64_t>(static_cast<std::size_t>(gamma) + 2, 0));
    for (int a = 0; a <= n; ++a) {
      binom[static_cast<std::size_t>(a)][0] = 1;
      for (int b = 1; b <= gamma + 1; ++b) {
        if (b > a) break;
        binom[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            binom[static_cast<std::size_t>(a) - 1][static_cast<std::size_t>(b) - 1] +
            binom[static_cast<std::size_t>(a) - 1][static_cast<std::size_t>(b)];
      }
    }

    t.offsets_.assign(static_cast<std::size_t>(gamma) + 2, 0);
    for (int s = 0; s <= gamma; ++s) {
      t.offsets_[static_cast<std::size_t>(s) + 1] =
          t.offsets_[static_cast<std::size_t>(s)] +
          (s <= n ? binom[static_cast<std::size_t>(n)][static_cast<std::size_t>(s)] : 0);
    }
    t.n_subsets_ = t.offsets_[static_cast<std::size_t>(gamma) + 1];
    t.states_per_stage_ = t.n_subsets_ * static_cast<std::uint64_t>(n + 1);
    assert(t.states_per_stage_ <=
           static_cast<std::uint64_t>(n + 1) * t.offsets_[static_cast<std::size_t>(gamma) + 1]);

    const unsigned __int128 total_entries =
        static_cast<unsigned __int128>(t.states_per_stage_) * static_cast<unsigned __int128>(n + 1);
    if (total_entries > static_cast<unsigned __int128>(opts.state_cap)) {
      throw CapExceeded("xp state space exceeds cap " + std::to_string(opts.state_cap));
    }

    stride = std::max(gamma, 1);
    members.assign(t.n_subsets_ * static_cast<std::uint64_t>(stride), 0);
    size_of.assign(t.n_subsets_, 0);
    bottom_of.assign(t.n_subsets_, 0);
    max_member.assign(t.n_subsets_, 0);
    devsum_of.assign(t.n_subsets_, 0);

    std::vector<int> current;
    enumerate_subsets(1, current);
  }

  void enumerate_subsets(int start, std::vector<int>& current) {
    const std::uint64_t idx = index_of(current);
    size_of[idx] = static_cast<std::uint8_t>(current.size());
    Time devsum = 0;
    int bottom = 0;
    for (std::size_t i = 0; i < current.size(); ++i) {
      members[idx * static_cast<std::uint64_t>(stride) + i] = current[i];
      devsum += p_hat[static_cast<std::size_t>(current[i])];
      if (bottom == 0 || precedes(bottom, current[i])) bottom = current[i];
    }
    devsum_of[idx] = devsum;
    bottom_of[idx] = bottom;
    max_member[idx] = current.empty() ? 0 : current.back();
    if (static_cast<int>(current.size()) == gamma) return;
    for (int s = start; s <= n; ++s) {
      current.push_back(s);
      enumerate_subsets(s + 1, current);
      current.pop_back();
    }
  }

  bool in_subset(std::uint64_t idx, int stage) const {
    const auto* begin = members.data() + idx * static_cast<std::uint64_t>(stride);
    return std::binary_search(begin, begin + size_of[idx], stage);
  }

  std::vector<int> members_of(std::uint64_t idx) const {
    const auto* begin = members.data() + idx * static_cast<std::uint64_t>(stride);
    return std::vector<int>(begin, begin + size_of[idx]);
  }

  void run() {
    const std::uint64_t width = static_cast<std::uint64_t>(n) + 1;
    std::vector<Time> prev(t.states_per_stage_, kInfiniteTime);
    prev[index_of({}) * width] = 0;  // F_0(0, empty) = 0

    if (t.all_stages_) t.values_.push_back(prev);
    t.parents_.resize(static_cast<std::size_t>(n));

    std::vector<Time> cur;
    for (int j = 1; j <= n; ++j) {
      cur = prev;  // Case 3 / skip transitions by default
      auto& parent = t.parents_[static_cast<std::size_t>(j) - 1];
      parent.assign(t.states_per_stage_, kInherit);

      for (std::uint64_t idx = 0; idx < t.n_subsets_; ++idx) {
        if (max_member[idx] > j) continue;  // pi not within [j]
        const int sz = size_of[idx];

        if (max_member[idx] == j) {
          // Case 1: j in pi (members are <= j, so j present iff it is the max).
          std::vector<int> reduced = members_of(idx);
          reduced.pop_back();
          const std::uint64_t base_idx = index_of(reduced);

          // ell <= gamma branch: predecessor is pi \ {j}.
          {
            const int ell = sz;
            const Time base = prev[base_idx * width + static_cast<std::uint64_t>(ell - 1)];
            if (base != kInfiniteTime &&
                base + p_bar[static_cast<std::size_t>(j)] + devsum_of[idx] <=
                    due[static_cast<std::size_t>(j)]) {
              cur[idx * width + static_cast<std::uint64_t>(ell)] =
                  base + p_bar[static_cast<std::size_t>(j)];
              parent[idx * width + static_cast<std::uint64_t>(ell)] = kTakeNoSwap;
            }
          }

          // ell > gamma branch: pi is full, the displaced member rejoins.
          if (sz == gamma) {
            for (int ell = gamma + 1; ell <= j; ++ell) {
              Time best = kInfiniteTime;
              std::int32_t best_code = kInherit;
              for (int i : stages_by_id) {
                if (i >= j || in_subset(idx, i)) continue;
                if (gamma > 0 && !precedes(bottom_of[idx], i)) continue;
                std::vector<int> swapped = reduced;
                swapped.insert(std::upper_bound(swapped.begin(), swapped.end(), i), i);
                const Time base =
                    prev[index_of(swapped) * width + static_cast<std::uint64_t>(ell - 1)];
                if (base == kInfiniteTime) continue;
                if (base + p_bar[static_cast<std::size_t>(j)] + devsum_of[idx] >
                    due[static_cast<std::size_t>(j)]) {
                  continue;
                }
                const Time v = base + p_bar[static_cast<std::size_t>(j)];
                if (v < best) {
                  best = v;
                  best_code = i;
                }
              }
              if (best != kInfiniteTime) {
                cur[idx * width + static_cast<std::uint64_t>(ell)] = best;
                parent[idx * width + static_cast<std::uint64_t>(ell)] = best_code;
              }
            }
          }
        } else if (sz == gamma && (gamma == 0 || precedes(bottom_of[idx], j))) {
          // Case 2: j may be early without entering pi. Ties keep the skip
          // branch, so a job only turns early on strict improvement.
          for (int ell = std::max(gamma, 1); ell <= j; ++ell) {
            const Time base = prev[idx * width + static_cast<std::uint64_t>(ell - 1)];
            if (base == kInfiniteTime) continue;
            if (base + p_bar[static_cast<std::size_t>(j)] + devsum_of[idx] >
                due[static_cast<std::size_t>(j)]) {
              continue;
            }
            const Time v = base + p_bar[static_cast<std::size_t>(j)];
            if (v < cur[idx * width + static_cast<std::uint64_t>(ell)]) {
              cur[idx * width + static_cast<std::uint64_t>(ell)] = v;
              parent[idx * width + static_cast<std::uint64_t>(ell)] = kAddKeepPi;
            }
          }
        }
        // Case 3 otherwise: value already copied.
      }

      prev.swap(cur);
      if (t.all_stages_) t.values_.push_back(prev);
    }

    if (!t.all_stages_) t.values_.push_back(std::move(prev));
  }
};

XpTable XpTable::build(const Instance& inst, const XpOptions& opts) {
  XpBuilder b(inst, opts);
  b.prepare();
  b.run();
  return std::move(b.t);
}

std::uint64_t XpTable::subset_index(const std::vector<int>& asc) const {
  // Combinadic rank within the size class, offset by smaller classes.
  std::uint64_t idx = offsets_[asc.size()];
  for (std::size_t i = 0; i < asc.size(); ++i) {
    const int c = asc[i] - 1;
    // C(c, i+1) via multiplicative form; c and i are tiny here.
    std::uint64_t b = 1;
    for (std::size_t k = 1; k <= i + 1; ++k) {
      b = b * static_cast<std::uint64_t>(c - static_cast<int>(i + 1) + static_cast<int>(k)) / k;
    }
    idx += b;
  }
  return idx;
}

Time XpTable::value(int stage, int ell, std::vector<int> pi_stages) const {
  if (stage < 0 || stage > n_ || ell < 0 || ell > n_) {
    throw std::invalid_argument("xp state out of range");
  }
  std::sort(pi_stages.begin(), pi_stages.end());
  if (!pi_stages.empty() && (pi_stages.front() < 1 || pi_stages.back() > n_)) {
    throw std::invalid_argument("pi stage out of range");
  }
  if (std::adjacent_find(pi_stages.begin(), pi_stages.end()) != pi_stages.end()) {
    throw std::invalid_argument("pi has duplicates");
  }
  if (static_cast<int>(pi_stages.size()) > gamma_) return kInfiniteTime;

  const std::vector<Time>* stage_values = nullptr;
  if (all_stages_) {
    stage_values = &values_[static_cast<std::size_t>(stage)];
  } else {
    if (stage != n_) {
      throw std::logic_error("stage values were not kept; build with keep_stage_values");
    }
    stage_values = &values_.back();
  }
  const std::uint64_t width = static_cast<std::uint64_t>(n_) + 1;
  return (*stage_values)[subset_index(pi_stages) * width + static_cast<std::uint64_t>(ell)];
}

int XpTable::max_early() const {
  const std::uint64_t width = static_cast<std::uint64_t>(n_) + 1;
  const auto& final_values = values_.back();
  for (int ell = n_; ell >= 1; --ell) {
    const int size = std::min(ell, gamma_);
    for (std::uint64_t idx = offsets_[static_cast<std::size_t>(size)];
         idx < offsets_[static_cast<std::size_t>(size) + 1]; ++idx) {
      if (final_values[idx * width + static_cast<std::uint64_t>(ell)] != kInfiniteTime) {
        return ell;
      }
    }
  }
  return 0;
}

std::vector<int> XpTable::reconstruct_early(int ell) const {
  const std::uint64_t width = static_cast<std::uint64_t>(n_) + 1;
  const auto& final_values = values_.back();

  // Deterministic start state: minimal value, then smallest subset index.
  const int size = std::min(ell, gamma_);
  Time best = kInfiniteTime;
  std::uint64_t best_idx = 0;
  for (std::uint64_t idx = offsets_[static_cast<std::size_t>(size)];
       idx < offsets_[static_cast<std::size_t>(size) + 1]; ++idx) {
    const Time v = final_values[idx * width + static_cast<std::uint64_t>(ell)];
    if (v < best) {
      best = v;
      best_idx = idx;
    }
  }
  if (ell > 0 && best == kInfiniteTime) {
    throw std::invalid_argument("no finite state with " + std::to_string(ell) + " early jobs");
  }

  std::vector<int> pi;
  {
    // Decode members of best_idx by walking down the combinadic rank.
    std::uint64_t rank = best_idx - offsets_[static_cast<std::size_t>(size)];
    for (int i = size; i >= 1; --i) {
      int c = i - 1;
      std::uint64_t b_prev = 0;
      for (int cand = i - 1; cand <= n_; ++cand) {
        std::uint64_t b = 1;
        for (int k = 1; k <= i; ++k) {
          b = b * static_cast<std::uint64_t>(cand - i + k) / static_cast<std::uint64_t>(k);
        }
        if (b > rank) break;
        c = cand;
        b_prev = b;
      }
      pi.insert(pi.begin(), c + 1);
      rank -= b_prev;
    }
  }

  std::vector<int> early_stages;
  int cur_ell = ell;
  for (int j = n_; j >= 1; --j) {
    const std::uint64_t idx = subset_index(pi);
    const std::int32_t code =
        parents_[static_cast<std::size_t>(j) - 1][idx * width + static_cast<std::uint64_t>(cur_ell)];
    if (code == kInherit) continue;
    early_stages.push_back(j);
    --cur_ell;
    if (code == kTakeNoSwap) {
      pi.erase(std::find(pi.begin(), pi.end(), j));
    } else if (code != kAddKeepPi) {
      pi.erase(std::find(pi.begin(), pi.end(), j));
      pi.insert(std::upper_bound(pi.begin(), pi.end(), code), code);
    }
  }
  assert(cur_ell == 0);
  assert(pi.empty());

  std::vector<int> ids;
  ids.reserve(early_stages.size());
  for (int s : early_stages) ids.push_back(edd_[static_cast<std::size_t>(s) - 1]);
  std::sort(ids.begin(), ids.end());
  return ids;
}

EarlySetSolution solve_xp(const Instance& inst, const XpOptions& opts) {
  const XpTable table = XpTable::build(inst, opts);
  const std::vector<int> early = table.reconstruct_early(table.max_early());
  const Feasibility feas = is_feasible_early_set(inst, early);
  if (!feas.feasible) {
    throw std::logic_error("xp reconstruction produced an infeasible early set");
  }
  return solution_from_early_set(inst, early);
}

}  // namespace rsched
