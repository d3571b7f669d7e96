// Command-line front end: solve instances, verify solution records, generate
// adversarial and random corpora, and benchmark algorithms against each other.
//
// Exit codes: 0 ok, 1 verification failure or benchmark mismatch,
// 2 input error, 3 tractability-cap refusal.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "rsched/generators.hpp"
#include "rsched/io.hpp"
#include "rsched/solve.hpp"

namespace fs = std::filesystem;
using namespace rsched;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitCapRefusal = 3;

void apply_caps_string(const std::string& caps, SolveCaps* out) {
  std::stringstream ss(caps);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("cap entry \"" + item + "\" is not key=value");
    }
    const std::string key = item.substr(0, eq);
    const std::int64_t value = std::stoll(item.substr(eq + 1));
    if (value <= 0) throw std::invalid_argument("cap \"" + key + "\" must be positive");
    if (key == "gamma") {
      out->gamma_cap = value;
    } else if (key == "k") {
      out->k_cap = static_cast<int>(value);
    } else if (key == "oracle-n") {
      out->oracle_n_cap = static_cast<int>(value);
    } else if (key == "states") {
      out->state_cap = value;
    } else {
      throw std::invalid_argument("unknown cap \"" + key + "\"");
    }
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
  std::vector<std::int64_t> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stoll(item));
  }
  return values;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

struct BenchRow {
  std::string instance;
  std::string algo;
  int objective = 0;
  double time_ms = 0.0;
  bool ok = true;
};

int run_bench(const std::string& dir, const SolveConfig& base_config, int threads,
              const std::string& output) {
  std::vector<fs::path> files;
  if (!fs::exists(dir)) throw std::invalid_argument("corpus directory not found: " + dir);
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  // Fixed algorithm listing order per instance.
  const Algo algos[] = {Algo::oracle, Algo::moore,    Algo::common_dd,
                        Algo::multi_dd, Algo::xp, Algo::fpt};

  std::vector<std::vector<BenchRow>> per_instance(files.size());
  std::vector<std::string> errors(files.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      try {
        const Instance inst = load_instance(files[i].string());
        std::vector<BenchRow> rows;
        for (Algo algo : algos) {
          if (!algorithm_applicable(algo, inst, base_config.caps)) continue;
          SolveConfig config = base_config;
          config.algo = algo;
          const SolveOutcome outcome = solve_instance(inst, config);
          BenchRow row;
          row.instance = files[i].filename().string();
          row.algo = algo_name(algo);
          row.objective = outcome.solution.objective;
          row.time_ms = outcome.wall_time_ms;
          rows.push_back(std::move(row));
        }
        for (BenchRow& row : rows) {
          row.ok = std::all_of(rows.begin(), rows.end(), [&](const BenchRow& other) {
            return other.objective == rows.front().objective;
          });
        }
        per_instance[i] = std::move(rows);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  const int worker_count = std::max(1, std::min<int>(threads, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(worker_count));
  for (int t = 0; t < worker_count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << "error: " << files[i].string() << ": " << errors[i] << "\n";
      return kExitInputError;
    }
  }

  std::ostringstream csv;
  csv << "# format=1\n";
  csv << "instance,algo,objective,time_ms,agreement\n";
  bool any_mismatch = false;
  for (const auto& rows : per_instance) {
    for (const BenchRow& row : rows) {
      csv << row.instance << "," << row.algo << "," << row.objective << ",";
      if (base_config.timings) csv << row.time_ms;
      csv << "," << (row.ok ? "ok" : "mismatch") << "\n";
      if (!row.ok) any_mismatch = true;
    }
  }
  write_text(output, csv.str());
  return any_mismatch ? kExitVerifyFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solvers for single-machine tardy-job scheduling under budgeted "
               "processing-time uncertainty"};
  app.require_subcommand(1);

  // --- solve ---
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance file");
  std::string solve_input, solve_output, solve_algo = "auto", solve_caps;
  bool solve_strict = false, solve_timings = false;
  int solve_threads = 1;
  solve_cmd->add_option("--input", solve_input, "Instance JSON file")->required();
  solve_cmd->add_option("--output", solve_output, "Record output path (default stdout)");
  solve_cmd->add_option("--algo", solve_algo,
                        "auto|oracle|xp|fpt|common-dd|multi-dd|moore");
  solve_cmd->add_option("--caps", solve_caps, "gamma=G,k=K,oracle-n=N,states=S");
  solve_cmd->add_flag("--strict-paper-step10", solve_strict,
                      "Literal slack-bound indexing in the extended Moore sweep");
  solve_cmd->add_flag("--timings", solve_timings, "Record wall time (not reproducible)");
  solve_cmd->add_option("--threads", solve_threads, "Accepted for symmetry; solving is serial");

  // --- verify ---
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a solution record");
  std::string verify_instance, verify_solution;
  verify_cmd->add_option("--instance", verify_instance, "Instance JSON file")->required();
  verify_cmd->add_option("--solution", verify_solution, "Record JSON file")->required();

  // --- gen ---
  auto* gen_cmd = app.add_subcommand("gen", "Generate instance files");
  gen_cmd->require_subcommand(1);

  auto* gen_ksum_cmd = gen_cmd->add_subcommand("ksum", "k-sum hardness reduction");
  std::string ksum_a, ksum_output;
  int ksum_k = 0;
  std::int64_t ksum_b = 0;
  std::int64_t ksum_m = -1;
  gen_ksum_cmd->add_option("--a", ksum_a, "Comma-separated positive integers")->required();
  gen_ksum_cmd->add_option("--k", ksum_k, "Subset cardinality")->required();
  gen_ksum_cmd->add_option("--b", ksum_b, "Target sum")->required();
  gen_ksum_cmd->add_option("--m", ksum_m, "Scale M (default max(2A, h^2))");
  gen_ksum_cmd->add_option("--output", ksum_output, "Output path (default stdout)");

  auto* gen_part_cmd = gen_cmd->add_subcommand("partition", "Equal-cardinality partition reduction");
  std::string part_a, part_output;
  std::int64_t part_m = -1;
  gen_part_cmd->add_option("--a", part_a, "Comma-separated positive integers, even count")
      ->required();
  gen_part_cmd->add_option("--m", part_m, "Scale M (default 2A + 1)");
  gen_part_cmd->add_option("--output", part_output, "Output path (default stdout)");

  auto* gen_rand_cmd = gen_cmd->add_subcommand("random", "Seeded random instance");
  RandomSpec rand_spec;
  std::string rand_style = "uniform", rand_output;
  gen_rand_cmd->add_option("--n", rand_spec.n, "Number of jobs")->required();
  gen_rand_cmd->add_option("--gamma", rand_spec.gamma, "Budget")->required();
  gen_rand_cmd->add_option("--max-p", rand_spec.max_p, "Nominal times in [0, max-p]")->required();
  gen_rand_cmd->add_option("--max-dev", rand_spec.max_dev, "Nonzero deviations in [1, max-dev]");
  gen_rand_cmd->add_option("--max-d", rand_spec.max_d, "Due dates in [0, max-d]")->required();
  gen_rand_cmd->add_option("--style", rand_style, "uniform|two-point|common|clustered");
  gen_rand_cmd->add_option("--classes", rand_spec.num_classes, "Due-date classes (clustered)");
  gen_rand_cmd->add_option("--k-uncertain", rand_spec.k_uncertain,
                           "Exactly this many jobs deviate");
  gen_rand_cmd->add_option("--seed", rand_spec.seed, "64-bit seed")->required();
  gen_rand_cmd->add_option("--output", rand_output, "Output path (default stdout)");

  // --- bench ---
  auto* bench_cmd = app.add_subcommand("bench", "Run all applicable algorithms over a corpus");
  std::string bench_dir, bench_output, bench_caps;
  bool bench_strict = false, bench_timings = false;
  int bench_threads = 1;
  bench_cmd->add_option("--dir", bench_dir, "Directory of instance .json files")->required();
  bench_cmd->add_option("--output", bench_output, "CSV output path (default stdout)");
  bench_cmd->add_option("--caps", bench_caps, "gamma=G,k=K,oracle-n=N,states=S");
  bench_cmd->add_flag("--strict-paper-step10", bench_strict, "");
  bench_cmd->add_flag("--timings", bench_timings, "Emit wall times (not reproducible)");
  bench_cmd->add_option("--threads", bench_threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (solve_cmd->parsed()) {
      SolveConfig config;
      config.algo = algo_from_name(solve_algo);
      config.strict_paper_step10 = solve_strict;
      config.timings = solve_timings;
      apply_caps_string(solve_caps, &config.caps);
      const Instance inst = load_instance(solve_input);
      const SolveOutcome outcome = solve_instance(inst, config);
      const SolutionRecord rec = make_record(inst, outcome, solve_timings);
      write_text(solve_output, record_to_json(rec).dump(2) + "\n");
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      const Instance inst = load_instance(verify_instance);
      std::ifstream in(verify_solution);
      if (!in) throw std::invalid_argument("cannot open " + verify_solution);
      nlohmann::json j;
      in >> j;
      const SolutionRecord rec = record_from_json(j);
      const VerifyResult result = verify_record(inst, rec);
      if (result.pass) {
        std::cout << "pass\n";
        return kExitOk;
      }
      std::cout << "fail: " << result.reason;
      if (result.first_differing_job != 0) {
        std::cout << " (job " << result.first_differing_job << ")";
      }
      std::cout << "\n";
      return kExitVerifyFail;
    }

    if (gen_ksum_cmd->parsed()) {
      KSumInstance src{parse_int_list(ksum_a), ksum_k, ksum_b};
      const GeneratedInstance gen =
          gen_ksum_reduction(src, ksum_m >= 0 ? std::optional<std::int64_t>(ksum_m) : std::nullopt);
      write_text(ksum_output, instance_to_json(gen.instance, &gen.meta).dump(2) + "\n");
      return kExitOk;
    }
    if (gen_part_cmd->parsed()) {
      PartitionInstance src{parse_int_list(part_a)};
      const GeneratedInstance gen = gen_partition_reduction(
          src, part_m >= 0 ? std::optional<std::int64_t>(part_m) : std::nullopt);
      write_text(part_output, instance_to_json(gen.instance, &gen.meta).dump(2) + "\n");
      return kExitOk;
    }
    if (gen_rand_cmd->parsed()) {
      if (rand_style == "uniform") {
        rand_spec.style = DueDateStyle::uniform;
      } else if (rand_style == "two-point") {
        rand_spec.style = DueDateStyle::two_point;
      } else if (rand_style == "common") {
        rand_spec.style = DueDateStyle::common;
      } else if (rand_style == "clustered") {
        rand_spec.style = DueDateStyle::clustered;
      } else {
        throw std::invalid_argument("unknown due-date style \"" + rand_style + "\"");
      }
      const GeneratedInstance gen = gen_random(rand_spec);
      write_text(rand_output, instance_to_json(gen.instance, &gen.meta).dump(2) + "\n");
      return kExitOk;
    }

    if (bench_cmd->parsed()) {
      SolveConfig config;
      config.strict_paper_step10 = bench_strict;
      config.timings = bench_timings;
      apply_caps_string(bench_caps, &config.caps);
      return run_bench(bench_dir, config, bench_threads, bench_output);
    }
  } catch (const CapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitCapRefusal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
