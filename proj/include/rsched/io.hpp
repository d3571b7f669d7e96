#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsched/core.hpp"
#include "rsched/generators.hpp"

namespace rsched {

// Instance file schema (format stable, unknown fields rejected):
//   {"gamma": int, "jobs": [{"id": int, "p_bar": int, "p_hat": int, "d": int}, ...],
//    "metadata": {...}}   -- metadata optional, written by the generators.
Instance instance_from_json(const nlohmann::json& j);
GeneratedInstance instance_with_meta_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst, const GeneratorMeta* meta = nullptr);

Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst,
                   const GeneratorMeta* meta = nullptr);

// Stable content hash of the canonical instance serialization (FNV-1a 64).
std::string instance_digest(const Instance& inst);

// Output of one solve run. `mu` is present for the dual-based solvers; wall
// time is only recorded on request so that default outputs are reproducible
// byte for byte.
struct SolutionRecord {
  std::string instance_digest;
  std::string algorithm;
  int objective = 0;
  std::vector<int> early;
  std::vector<int> sigma;
  std::vector<Time> certificate;  // per early job, aligned with sigma prefix
  std::optional<std::vector<Time>> mu;
  std::optional<double> wall_time_ms;
};

nlohmann::json record_to_json(const SolutionRecord& rec);
SolutionRecord record_from_json(const nlohmann::json& j);

struct VerifyResult {
  bool pass = true;
  std::string reason;
  int first_differing_job = 0;
};

// Re-checks a record against an instance: the permutation must be valid,
// every claimed-early job must meet its due date in the worst case under the
// recorded permutation, the certificate must match the recomputation, and the
// objective must equal n - |early|. Tardy jobs may appear in any order.
VerifyResult verify_record(const Instance& inst, const SolutionRecord& rec);

}  // namespace rsched
